#pragma once

#include <optional>
#include <string>

#include "hv/lattice.hpp"
#include "hv/rng.hpp"

namespace hv {

enum class ConfigKind { IudHv, IudFour, Box, Line, Alternating, Ustp };

std::string config_kind_name(ConfigKind k);
std::optional<ConfigKind> parse_config_kind(const std::string& name);

/// Quadrant of the argument of v under the half-open sector convention
/// (-pi/4, pi/4] -> 0, (pi/4, 3pi/4] -> 1, (3pi/4, pi] u (-pi, -3pi/4] -> 2,
/// (-3pi/4, -pi/4] -> 3. Decided by integer comparisons, so the boundary
/// rays land exactly where the convention puts them. v must not be the origin.
int arg_sector(Vertex v);

/// The circulating configuration: N / W / S / E by sector. Origin -> East.
Direction box_rotor(Vertex v);

/// The radial configuration: E / N / W / S by sector. Origin -> East.
Direction line_rotor(Vertex v);

/// H when y - x is even, V when odd (canonical directions East / North).
Direction alternating_rotor(Vertex v);

/// A rotor configuration: a deterministic function (kind, seed) -> rotor per
/// vertex. Lazy kinds derive each vertex's rotor by a counter-based hash;
/// Ustp holds a materialized tree on B_radius and falls back to IudFour with
/// a derived seed outside it.
class RotorConfig {
  public:
    RotorConfig(ConfigKind kind, uint64_t seed, int ustp_radius = 0);

    ConfigKind kind() const { return kind_; }
    uint64_t seed() const { return seed_; }
    int ustp_radius() const { return ustp_radius_; }

    Direction at(Vertex v) const;
    Label label_at(Vertex v) const { return label_of(at(v)); }

    /// True when v would be served by the IudFour fallback (Ustp kind only).
    bool is_fallback(Vertex v) const {
        return kind_ == ConfigKind::Ustp && !tree_.contains(v);
    }

  private:
    ConfigKind kind_;
    uint64_t seed_;
    int ustp_radius_;
    Grid<int8_t> tree_;  // Direction codes; Ustp only
};

/// Wilson's algorithm (loop-erased random walks) on the ball B_radius rooted
/// at the origin. Every non-origin rotor points along its tree edge toward
/// the root; the origin rotor is uniform over its four neighbors,
/// independent of the tree. radius >= 2.
Grid<int8_t> wilson_ustp_tree(int radius, uint64_t seed);

struct LabelLawReport {
    int64_t samples = 0;
    int64_t h_count = 0;
    double h_frequency = 0.0;
    bool deterministic = false;
};

/// Empirical H-frequency of the rotor at v over fresh seeds.
LabelLawReport label_law_check(ConfigKind kind, Vertex v, int64_t samples,
                               uint64_t base_seed);

}  // namespace hv
