#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hv/rotor_configs.hpp"
#include "hv/rwlm.hpp"

namespace hv {

/// q = 0 walk on the alternating configuration: the even-step subsequence
/// is a simple random walk with uniform diagonal steps.
struct Q0AlternatingReport {
    int64_t steps = 0;
    int64_t even_increments = 0;
    int64_t diagonal_increments = 0;
    std::array<int64_t, 4> quadrant{};  // (+,+), (-,+), (+,-), (-,-)
    bool all_diagonal = false;
    double max_quadrant_z = 0.0;  // per-category deviation in sigmas
};
Q0AlternatingReport q0_alternating_run(int64_t steps, uint64_t seed);

/// q = 0 walk on an IUD configuration with a blocked vertex: a site whose
/// four neighbor labels read V, V (horizontal) and H, H (vertical) is
/// unreachable and must collect zero visits.
struct Q0BlockedReport {
    bool pattern_found = false;
    Vertex site;
    int64_t steps = 0;
    int64_t visits = 0;
};
Q0BlockedReport q0_blocked_run(uint64_t config_seed, uint64_t walk_seed,
                               int64_t steps, int search_half = 50);

/// Exploratory q = 0 run on the box configuration; no acceptance claim.
struct Q0BoxReport {
    int64_t steps = 0;
    int64_t origin_returns = 0;
    int64_t max_norm2 = 0;
    int64_t distinct_tiles = 0;
};
Q0BoxReport q0_box_run(int64_t steps, uint64_t seed);

/// Mean of |X_t|^2 / t over seeded trials; the exact identity E|X_t|^2 = t
/// makes this a calibration check.
struct DiffusiveReport {
    double q = 0.0;
    int64_t t = 0;
    int64_t trials = 0;
    double mean_ratio = 0.0;
    double se = 0.0;
};
DiffusiveReport diffusive_check(double q, ConfigKind cfg_kind, int64_t t,
                                int64_t trials, uint64_t seed,
                                int threads = 1);

/// Exploratory scenery-process probe: total-variation distance between
/// window label patterns around the walker at time t and patterns around
/// the origin of fresh USTP samples.
struct WindowDivergence {
    std::string window;  // "cross5" or "square4"
    int64_t t = 0;
    double tv = 0.0;
};
struct StationarityReport {
    int ustp_radius = 0;
    int64_t trials = 0;
    int64_t reference_samples = 0;
    int64_t fallback_touches = 0;
    std::vector<WindowDivergence> divergences;
};
StationarityReport stationarity_probe(ConfigKind start_kind, double q,
                                      int ustp_radius,
                                      const std::vector<int64_t>& t_grid,
                                      int64_t trials, uint64_t seed,
                                      int threads = 1);

}  // namespace hv
