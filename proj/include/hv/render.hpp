#pragma once

#include <string>

#include "hv/rotor_configs.hpp"
#include "hv/rwlm.hpp"

namespace hv {

/// Hex color on the viridis ramp at t in [0, 1]; the ramp is a fixed table,
/// so renders are byte-reproducible.
std::string viridis_hex(double t);

/// Renders the trajectory of a single-walker RWLM: every traversed edge is
/// drawn once, colored by the time of its first traversal. Returns a
/// complete SVG 1.1 document.
std::string render_walk_svg(const LocalMechanism& mech,
                            const RotorConfig& config, int64_t steps,
                            uint64_t seed, double cell = 4.0);

/// Arrow-field picture of a rotor configuration on [-half, half]^2.
std::string render_config_svg(const RotorConfig& config, int half,
                              double cell = 16.0);

}  // namespace hv
