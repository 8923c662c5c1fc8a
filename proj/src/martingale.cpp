#include "hv/martingale.hpp"

#include <numbers>

#include "hv/farm.hpp"
#include "hv/kernels/stencil.hpp"

namespace hv {

namespace {
constexpr double pi = std::numbers::pi;
}

double weight_delta_from_scratch(const FrozenResult& res,
                                 const RotorConfig& initial,
                                 const WeightField& weights) {
    double sum = 0.0;
    for (const auto& [v, final_label] : res.final_labels) {
        Label init_label = initial.label_at(v);
        sum += weights.weight(v, final_label) - weights.weight(v, init_label);
    }
    return sum;
}

double one_step_drift(Label site_label, Vertex pos, double q,
                      const KernelTable& table, const WeightField& weights) {
    const double coeff = (2.0 * q - 1.0) / q;
    const double a0 = table.at(pos);
    const double w0 = weights.weight(pos, site_label);
    const double dep = pos == origin ? 1.0 : 0.0;

    double drift = 0.0;
    for (int flip_it = 0; flip_it < 2; ++flip_it) {
        Label nl = flip_it ? flip(site_label) : site_label;
        double p_label = flip_it ? q : 1.0 - q;
        Vertex axis = nl == Label::H ? Vertex{1, 0} : Vertex{0, 1};
        for (int sense : {+1, -1}) {
            Vertex to{pos.x + sense * axis.x, pos.y + sense * axis.y};
            double dm = table.at(to) - a0 - dep +
                        coeff * (weights.weight(pos, nl) - w0);
            drift += (p_label / 2.0) * dm;
        }
    }
    return drift;
}

double martingale_path_bound(const KernelTable& table,
                             const WeightField& weights, double q, int n,
                             int64_t k, int r) {
    double max_a = 0.0;
    const double rr = r + 1;
    const int cap = int(std::ceil(rr));
    for (int y = -cap; y <= cap; ++y)
        for (int x = -cap; x <= cap; ++x)
            if (double(x) * x + double(y) * y < rr * rr)
                max_a = std::max(max_a, table.at(x, y));
    return n * max_a + double(k + n) +
           (std::fabs(2.0 * q - 1.0) / q) * 2.0 * weights.ball_sum(r);
}

OptionalStoppingResult verify_optional_stopping(
    ConfigKind cfg_kind, double q, int n, int64_t k, int r, int64_t trials,
    uint64_t seed, const KernelTable& table, const WeightField& weights,
    int threads) {
    const LocalMechanism mech = hv_mechanism(q);
    const FrozenContext ctx(r);
    const bool random_cfg =
        cfg_kind == ConfigKind::IudHv || cfg_kind == ConfigKind::IudFour;
    const RotorConfig shared(cfg_kind, derive_seed(seed, 0x5eedc0f6ULL),
                             cfg_kind == ConfigKind::Ustp ? r + 2 : 0);

    std::vector<double> m_tau(size_t(trials), 0.0);
    std::vector<double> max_abs(size_t(trials), 0.0);
    std::vector<uint8_t> capped(size_t(trials), 0);
    parallel_trials(trials, threads, [&](int64_t i) {
        FrozenParams params;
        params.q = q;
        params.n = n;
        params.k = k;
        params.r = r;
        params.seed = derive_seed(seed, uint64_t(2 * i));
        params.collect_cells = false;
        MartingaleHook hook(table, weights, q);
        FrozenResult res;
        if (random_cfg) {
            RotorConfig cfg(cfg_kind, derive_seed(seed, uint64_t(2 * i + 1)));
            res = run_frozen(ctx, mech, cfg, params, hook);
        } else {
            res = run_frozen(ctx, mech, shared, params, hook);
        }
        m_tau[size_t(i)] = hook.value();
        max_abs[size_t(i)] = hook.max_abs();
        capped[size_t(i)] = res.reason == StopReason::StepCap;
    });

    OptionalStoppingResult out;
    out.trials = trials;
    RunningStat stat;
    for (double m : m_tau) stat.add(m);
    out.mean = stat.mean();
    out.se = stat.stderror();
    out.z = out.se > 0.0 ? out.mean / out.se : 0.0;
    for (double m : max_abs) out.max_abs_m = std::max(out.max_abs_m, m);
    for (uint8_t c : capped) out.cap_hits += c;
    out.path_bound = martingale_path_bound(table, weights, q, n, k, r);
    return out;
}

double bound_many_walkers(double q, int n) {
    return 1.0 - std::fabs(4.0 * q - 2.0) / (double(n) * q);
}

double bound_iud(double q, int n) {
    return 1.0 - std::fabs(2.0 * q - 1.0) / (double(n) * q);
}

double finite_r_bound(int64_t k, int r, double q, int n, double weight_term,
                      double C) {
    return 1.0 - (pi / (2.0 * std::log(double(r)))) *
                     (((2.0 * q - 1.0) / (double(n) * q)) * weight_term +
                      double(k) / double(n) + C);
}

double bound_constant(const KernelTable& table, int r) {
    double worst = 0.0;
    const double target = (2.0 / pi) * std::log(double(r));
    for (Vertex v : ball_boundary(r)) {
        double gap = target - table.at(v);
        if (gap > worst) worst = gap;
    }
    return 1.0 + worst;
}

CellReport run_bound_cell(ConfigKind cfg_kind, double q, int n, int64_t k,
                          int r, int64_t trials, uint64_t seed,
                          const KernelTable& table, const WeightField& weights,
                          int threads) {
    const LocalMechanism mech = hv_mechanism(q);
    const FrozenContext ctx(r);
    const bool random_cfg =
        cfg_kind == ConfigKind::IudHv || cfg_kind == ConfigKind::IudFour;
    const RotorConfig shared(cfg_kind, derive_seed(seed, 0x5eedc0f6ULL),
                             cfg_kind == ConfigKind::Ustp ? r + 2 : 0);

    std::vector<double> wt_term(size_t(trials), 0.0);
    std::vector<uint8_t> success(size_t(trials), 0), capped(size_t(trials), 0);
    parallel_trials(trials, threads, [&](int64_t i) {
        FrozenParams params;
        params.q = q;
        params.n = n;
        params.k = k;
        params.r = r;
        params.seed = derive_seed(seed, uint64_t(2 * i));
        params.collect_cells = false;
        MartingaleHook hook(table, weights, q);
        FrozenResult res;
        if (random_cfg) {
            RotorConfig cfg(cfg_kind, derive_seed(seed, uint64_t(2 * i + 1)));
            res = run_frozen(ctx, mech, cfg, params, hook);
        } else {
            res = run_frozen(ctx, mech, shared, params, hook);
        }
        // sum (wt(x,0) - wt(x,tau)) = -(incremental weight delta at tau)
        wt_term[size_t(i)] = -hook.weight_delta();
        success[size_t(i)] = res.reason == StopReason::KReturns;
        capped[size_t(i)] = res.reason == StopReason::StepCap;
    });

    CellReport rep;
    rep.q = q;
    rep.n = n;
    rep.k = k;
    rep.r = r;
    rep.trials = trials;
    for (uint8_t s : success) rep.successes += s;
    for (uint8_t c : capped) rep.cap_hits += c;
    rep.p_hat = double(rep.successes) / double(trials);
    rep.ci = wilson_ci(rep.successes, trials);

    RunningStat wt;
    for (double w : wt_term) wt.add(w);
    rep.weight_term_mean = wt.mean();
    rep.weight_term_se = wt.stderror();

    const double C = bound_constant(table, r);
    rep.bound = finite_r_bound(k, r, q, n, rep.weight_term_mean, C);
    const double se_p = binomial_se(rep.successes, trials);
    const double coef = (pi / (2.0 * std::log(double(r)))) *
                        (std::fabs(2.0 * q - 1.0) / (double(n) * q));
    rep.se_combined = std::sqrt(se_p * se_p +
                                coef * coef * rep.weight_term_se *
                                    rep.weight_term_se);
    rep.slack = rep.p_hat - rep.bound;
    return rep;
}

}  // namespace hv
