#include "hv/rwlm.hpp"

#include <atomic>

#include "hv/farm.hpp"

namespace hv {

bool LocalMechanism::irreducible() const {
    // Strong connectivity of the 4-state digraph of positive entries.
    uint8_t reach[4];
    for (int s = 0; s < 4; ++s) {
        uint8_t mask = uint8_t(1u << s);
        for (int pass = 0; pass < 4; ++pass)
            for (int a = 0; a < 4; ++a)
                if (mask & (1u << a))
                    for (int b = 0; b < 4; ++b)
                        if (p[size_t(a)][size_t(b)] > 0.0)
                            mask |= uint8_t(1u << b);
        reach[s] = mask;
    }
    for (int s = 0; s < 4; ++s)
        if (reach[s] != 0xF) return false;
    return true;
}

LocalMechanism hv_mechanism(double q) {
    if (!(q > 0.0 && q <= 1.0))
        throw std::invalid_argument("hv_mechanism: q must lie in (0, 1]");
    LocalMechanism m;
    for (int cur = 0; cur < 4; ++cur) {
        Label l = label_of(Direction(cur));
        for (int nxt = 0; nxt < 4; ++nxt) {
            bool same_axis = label_of(Direction(nxt)) == l;
            m.p[size_t(cur)][size_t(nxt)] =
                same_axis ? (1.0 - q) / 2.0 : q / 2.0;
        }
    }
    return m;
}

LocalMechanism p_rotor_mechanism(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p_rotor_mechanism: p must lie in [0, 1]");
    LocalMechanism m;
    for (int cur = 0; cur < 4; ++cur) {
        Direction d(cur);
        m.p[size_t(cur)][size_t(rotate_ccw(d))] += p;
        m.p[size_t(cur)][size_t(rotate_cw(d))] += 1.0 - p;
    }
    return m;
}

LocalMechanism frozen_label_mechanism() {
    LocalMechanism m;
    for (int cur = 0; cur < 4; ++cur) {
        Label l = label_of(Direction(cur));
        for (int nxt = 0; nxt < 4; ++nxt)
            if (label_of(Direction(nxt)) == l)
                m.p[size_t(cur)][size_t(nxt)] = 0.5;
    }
    return m;
}

FrozenContext::FrozenContext(int r) : r_(r), zone_(r + 1, uint8_t(Outside)) {
    if (r < 1) throw std::invalid_argument("FrozenContext: r must be >= 1");
    const int h = zone_.half();
    for (int y = -h; y <= h; ++y) {
        for (int x = -h; x <= h; ++x) {
            Vertex v{x, y};
            if (in_ball(v, r))
                zone_(v) = uint8_t(Interior);
            else if (on_boundary(v, r))
                zone_(v) = uint8_t(Boundary);
        }
    }
}

ReturnProbEstimate estimate_return_prob(ConfigKind cfg_kind, double q, int n,
                                        int64_t k, int r, int64_t trials,
                                        uint64_t seed, int threads,
                                        int ustp_radius) {
    if (trials < 1)
        throw std::invalid_argument("estimate_return_prob: trials must be >= 1");
    const LocalMechanism mech = hv_mechanism(q);
    const FrozenContext ctx(r);
    const bool random_cfg =
        cfg_kind == ConfigKind::IudHv || cfg_kind == ConfigKind::IudFour ||
        cfg_kind == ConfigKind::Ustp;
    const int tree_radius =
        cfg_kind == ConfigKind::Ustp ? (ustp_radius > 0 ? ustp_radius : r + 2)
                                     : 0;
    // Deterministic kinds share one config; random kinds get one per trial.
    const RotorConfig shared(cfg_kind, derive_seed(seed, 0x5eedc0f6ULL),
                             tree_radius);

    std::atomic<int64_t> successes{0}, cap_hits{0};
    parallel_trials(trials, threads, [&](int64_t i) {
        FrozenParams params;
        params.q = q;
        params.n = n;
        params.k = k;
        params.r = r;
        params.seed = derive_seed(seed, uint64_t(2 * i));
        params.collect_cells = false;
        FrozenResult res;
        if (random_cfg) {
            RotorConfig cfg(cfg_kind, derive_seed(seed, uint64_t(2 * i + 1)),
                            tree_radius);
            res = run_frozen(ctx, mech, cfg, params);
        } else {
            res = run_frozen(ctx, mech, shared, params);
        }
        if (res.reason == StopReason::KReturns)
            successes.fetch_add(1, std::memory_order_relaxed);
        else if (res.reason == StopReason::StepCap)
            cap_hits.fetch_add(1, std::memory_order_relaxed);
    });

    ReturnProbEstimate est;
    est.trials = trials;
    est.successes = successes.load();
    est.cap_hits = cap_hits.load();
    est.p_hat = double(est.successes) / double(trials);
    est.ci = wilson_ci(est.successes, trials);
    return est;
}

}  // namespace hv
