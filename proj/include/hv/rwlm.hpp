#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "hv/lattice.hpp"
#include "hv/rng.hpp"
#include "hv/rotor_configs.hpp"
#include "hv/stats.hpp"

namespace hv {

/// A local mechanism: an irreducible Markov chain on the four directions;
/// row p[cur][next] is the probability of resampling cur into next.
struct LocalMechanism {
    std::array<std::array<double, 4>, 4> p{};

    double row_sum(Direction cur) const {
        const auto& row = p[size_t(cur)];
        return ((row[0] + row[1]) + (row[2] + row[3]));
    }

    Direction sample(Direction cur, Rng& rng) const {
        const auto& row = p[size_t(cur)];
        double u = rng.uniform();
        double c = row[0];
        if (u < c) return Direction(0);
        c += row[1];
        if (u < c) return Direction(1);
        c += row[2];
        if (u < c) return Direction(2);
        return Direction(3);
    }

    bool irreducible() const;
};

/// The H-V mechanism: flip the label with probability q, then step uniformly
/// along the (new) label's axis. q must lie in (0, 1]; the q = 0 regime is
/// served by frozen_label_mechanism only.
LocalMechanism hv_mechanism(double q);

/// The p-rotor mechanism: rotate 90 degrees counter-clockwise with
/// probability p, clockwise with probability 1-p. p in [0, 1].
LocalMechanism p_rotor_mechanism(double p);

/// Labels never change; steps are uniform along the current label's axis.
/// Not irreducible; used only by the q = 0 experiments.
LocalMechanism frozen_label_mechanism();

/// Precomputed geometry for frozen walks of radius r: for each cell of the
/// covering window, whether it lies in B_r, on its outer boundary, or
/// outside both.
class FrozenContext {
  public:
    explicit FrozenContext(int r);
    int r() const { return r_; }
    int half() const { return zone_.half(); }
    enum Zone : uint8_t { Interior = 0, Boundary = 1, Outside = 2 };
    Zone zone(Vertex v) const { return Zone(zone_(v)); }

  private:
    int r_;
    Grid<uint8_t> zone_;
};

enum class StopReason : uint8_t { KReturns, AllFrozen, StepCap };

struct FrozenParams {
    double q = 1.0;  // informational; the mechanism carries the law
    int n = 1;
    int64_t k = 0;
    int r = 1;
    uint64_t seed = 1;
    int64_t step_cap = 1'000'000'000;
    bool collect_cells = true;  // gather visited set and final labels
};

struct FrozenResult {
    int64_t tau = 0;         // elapsed slots, skipped turns included
    int64_t returns = 0;     // R_tau
    int64_t departures = 0;  // N_tau
    StopReason reason = StopReason::KReturns;
    std::vector<Vertex> endpoints;
    std::vector<Vertex> visited;                        // row-major order
    std::vector<std::pair<Vertex, Label>> final_labels;  // over visited

    friend bool operator==(const FrozenResult&, const FrozenResult&) = default;
};

struct NoHooks {
    void on_move(Vertex, Label, Label, Vertex) {}
};

/// Runs one frozen walk: n walkers at the origin, cyclic turn order (slot t
/// moves walker (t-1) mod n), walkers on the boundary skip their turns;
/// stops when R = k or every walker is frozen. Hooks::on_move fires once per
/// actual move with (from, old label, new label, to).
template <class Hooks = NoHooks>
FrozenResult run_frozen(const FrozenContext& ctx, const LocalMechanism& mech,
                        const RotorConfig& config, const FrozenParams& params,
                        Hooks&& hooks = {}) {
    if (params.r != ctx.r())
        throw std::invalid_argument("run_frozen: context/params radius mismatch");
    if (params.n < 1 || params.k < 0 || params.r < 1)
        throw std::invalid_argument("run_frozen: bad parameters");

    const int n = params.n;
    Rng rng(params.seed);
    Grid<int8_t> dirs(ctx.half(), int8_t(-1));
    Grid<uint8_t> seen(ctx.half(), 0);
    std::vector<Vertex> pos(size_t(n), origin);
    std::vector<uint8_t> frozen(size_t(n), 0);
    seen(origin) = 1;

    FrozenResult res;
    if (params.k == 0) {
        res.reason = StopReason::KReturns;  // R_0 = 0 = k
    } else {
        int frozen_count = 0;
        int64_t slot = 0;
        for (;;) {
            if (slot >= params.step_cap) {
                res.reason = StopReason::StepCap;
                res.tau = slot;
                break;
            }
            ++slot;
            int i = int((slot - 1) % n);
            if (frozen[size_t(i)]) continue;
            Vertex v = pos[size_t(i)];
            int8_t cur = dirs(v);
            if (cur < 0) cur = int8_t(config.at(v));
            Direction nd = mech.sample(Direction(cur), rng);
            dirs(v) = int8_t(nd);
            Vertex to = v + step_of(nd);
            hooks.on_move(v, label_of(Direction(cur)), label_of(nd), to);
            pos[size_t(i)] = to;
            seen(to) = 1;
            if (v == origin) ++res.departures;
            if (to == origin) {
                if (++res.returns == params.k) {
                    res.reason = StopReason::KReturns;
                    res.tau = slot;
                    break;
                }
            } else if (ctx.zone(to) == FrozenContext::Boundary) {
                frozen[size_t(i)] = 1;
                if (++frozen_count == n) {
                    res.reason = StopReason::AllFrozen;
                    res.tau = slot;
                    break;
                }
            }
        }
    }

    res.endpoints = pos;
    if (params.collect_cells) {
        const int h = ctx.half();
        for (int y = -h; y <= h; ++y) {
            for (int x = -h; x <= h; ++x) {
                if (!seen(x, y)) continue;
                Vertex v{x, y};
                res.visited.push_back(v);
                int8_t d = dirs(v);
                Label l = d >= 0 ? label_of(Direction(d)) : config.label_at(v);
                res.final_labels.emplace_back(v, l);
            }
        }
    }
    return res;
}

struct ReturnProbEstimate {
    int64_t trials = 0;
    int64_t successes = 0;  // runs that reached k returns
    int64_t cap_hits = 0;   // step-cap diagnostics, reported separately
    double p_hat = 0.0;
    Interval ci;  // 95% Wilson score interval
};

/// Monte Carlo estimate of p_{k,r}: fraction of trials whose frozen walk
/// reaches k returns. Random config kinds get a fresh seed per trial.
ReturnProbEstimate estimate_return_prob(ConfigKind cfg_kind, double q, int n,
                                        int64_t k, int r, int64_t trials,
                                        uint64_t seed, int threads = 1,
                                        int ustp_radius = 0);

/// Direction grid backed by 64x64 tiles; serves the unbounded walks.
class PagedDirs {
  public:
    static constexpr int tile_bits = 6;
    static constexpr int tile_side = 1 << tile_bits;

    int8_t get(Vertex v) {
        return tile(v)[cell_index(v)];
    }
    void set(Vertex v, int8_t d) { tile(v)[cell_index(v)] = d; }
    size_t tile_count() const { return tiles_.size(); }

  private:
    using Tile = std::array<int8_t, size_t(tile_side) * tile_side>;
    static uint64_t tile_key(Vertex v) {
        return (uint64_t(uint32_t(v.x >> tile_bits)) << 32) |
               uint64_t(uint32_t(v.y >> tile_bits));
    }
    static size_t cell_index(Vertex v) {
        return size_t(v.y & (tile_side - 1)) * tile_side +
               size_t(v.x & (tile_side - 1));
    }
    Tile& tile(Vertex v) {
        uint64_t key = tile_key(v);
        if (last_ && key == last_key_) return *last_;
        auto [it, inserted] = tiles_.try_emplace(key);
        if (inserted) it->second.fill(int8_t(-1));
        last_key_ = key;
        last_ = &it->second;
        return it->second;
    }
    std::unordered_map<uint64_t, Tile> tiles_;
    uint64_t last_key_ = 0;
    Tile* last_ = nullptr;
};

/// Single-walker RWLM on the full lattice (no freezing).
class UnboundedWalk {
  public:
    UnboundedWalk(const LocalMechanism& mech, const RotorConfig& config,
                  uint64_t seed)
        : mech_(mech), config_(config), rng_(seed) {}

    Vertex position() const { return pos_; }

    /// One step; returns the new position.
    Vertex step() {
        int8_t cur = dirs_.get(pos_);
        if (cur < 0) cur = int8_t(config_.at(pos_));
        Direction nd = mech_.sample(Direction(cur), rng_);
        dirs_.set(pos_, int8_t(nd));
        pos_ = pos_ + step_of(nd);
        return pos_;
    }

  private:
    const LocalMechanism& mech_;
    const RotorConfig& config_;
    Rng rng_;
    PagedDirs dirs_;
    Vertex pos_ = origin;
};

}  // namespace hv
