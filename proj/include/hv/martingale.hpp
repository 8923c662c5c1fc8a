#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hv/lattice.hpp"
#include "hv/potential_kernel.hpp"
#include "hv/rwlm.hpp"
#include "hv/stats.hpp"

namespace hv {

/// Tracks M_t = sum_i a(Y_t^i) - N_t + ((2q-1)/q) * sum_x (wt(x,t) - wt(x,0))
/// incrementally along a frozen run. Plugs into run_frozen as a hook.
class MartingaleHook {
  public:
    MartingaleHook(const KernelTable& table, const WeightField& weights,
                   double q)
        : table_(&table), weights_(&weights),
          coeff_((2.0 * q - 1.0) / q) {}

    void on_move(Vertex from, Label old_label, Label new_label, Vertex to) {
        sum_a_ += table_->at(to) - table_->at(from);
        if (from == origin) ++departures_;
        if (new_label != old_label)
            weight_delta_ += weights_->weight(from, new_label) -
                             weights_->weight(from, old_label);
        double m = std::fabs(value());
        if (m > max_abs_) max_abs_ = m;
    }

    double value() const {
        return sum_a_ - double(departures_) + coeff_ * weight_delta_;
    }
    /// sum_x (wt(x,t) - wt(x,0)) over the visited set.
    double weight_delta() const { return weight_delta_; }
    int64_t departures() const { return departures_; }
    double max_abs() const { return max_abs_; }

  private:
    const KernelTable* table_;
    const WeightField* weights_;
    double coeff_;
    double sum_a_ = 0.0;
    double weight_delta_ = 0.0;
    int64_t departures_ = 0;
    double max_abs_ = 0.0;
};

/// Recomputes the weight-delta sum of a finished run from scratch, from the
/// visited set and final labels; the oracle for the incremental tracker.
double weight_delta_from_scratch(const FrozenResult& res,
                                 const RotorConfig& initial,
                                 const WeightField& weights);

/// Exact conditional drift E[M_{t+1} - M_t | F_t] for a walker sitting at
/// `pos` whose site carries `site_label`, by enumerating the four one-step
/// outcomes with their exact probabilities. Zero up to kernel residuals.
double one_step_drift(Label site_label, Vertex pos, double q,
                      const KernelTable& table, const WeightField& weights);

/// Bound on |M_t| along a frozen (k, r) run, from the boundedness display:
/// n * max_{B_{r+1}} a + (k + n) + (|2q-1|/q) * 2 * sum_{B_{r+1}} f.
double martingale_path_bound(const KernelTable& table,
                             const WeightField& weights, double q, int n,
                             int64_t k, int r);

struct OptionalStoppingResult {
    int64_t trials = 0;
    double mean = 0.0;
    double se = 0.0;
    double z = 0.0;  // mean / se
    double max_abs_m = 0.0;
    double path_bound = 0.0;
    int64_t cap_hits = 0;
};

/// Monte Carlo check of E[M_tau] = 0 over seeded frozen runs.
OptionalStoppingResult verify_optional_stopping(
    ConfigKind cfg_kind, double q, int n, int64_t k, int r, int64_t trials,
    uint64_t seed, const KernelTable& table, const WeightField& weights,
    int threads = 1);

/// 1 - |4q-2| / (n q); may be negative, the caller interprets.
double bound_many_walkers(double q, int n);

/// 1 - |2q-1| / (n q); may be negative, the caller interprets.
double bound_iud(double q, int n);

/// Finite-r lower bound for p_{k,r}:
/// 1 - (pi / (2 ln r)) * ( ((2q-1)/(nq)) * weight_term + k/n + C ),
/// with weight_term = sum_{B_{r+1}} (wt(x,0) - E[wt(x,tau)]).
double finite_r_bound(int64_t k, int r, double q, int n, double weight_term,
                      double C);

/// Concrete valid constant for the finite-r bound, instantiated from the
/// kernel table: 1 + max_{x in dB_r} ((2/pi) ln r - a(x))_+ .
double bound_constant(const KernelTable& table, int r);

struct CellReport {
    double q = 0.0;
    int n = 0;
    int64_t k = 0;
    int r = 0;
    int64_t trials = 0;
    int64_t successes = 0;
    double p_hat = 0.0;
    Interval ci;
    double weight_term_mean = 0.0;  // MC estimate of the weight term
    double weight_term_se = 0.0;
    double bound = 0.0;
    double se_combined = 0.0;  // sqrt(se_p^2 + (coef * se_wt)^2)
    double slack = 0.0;        // p_hat - bound
    int64_t cap_hits = 0;
};

/// One (q, n, k, r) parameter cell: estimates p_{k,r} and the weight term in
/// the same trials, instantiates the finite-r bound, and propagates the
/// weight-term CI into the combined slack.
CellReport run_bound_cell(ConfigKind cfg_kind, double q, int n, int64_t k,
                          int r, int64_t trials, uint64_t seed,
                          const KernelTable& table, const WeightField& weights,
                          int threads = 1);

}  // namespace hv
