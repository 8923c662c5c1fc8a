#include "hv/rotor_configs.hpp"

#include <cassert>
#include <stdexcept>

namespace hv {

std::string config_kind_name(ConfigKind k) {
    switch (k) {
        case ConfigKind::IudHv: return "iud_hv";
        case ConfigKind::IudFour: return "iud_four";
        case ConfigKind::Box: return "box";
        case ConfigKind::Line: return "line";
        case ConfigKind::Alternating: return "alternating";
        case ConfigKind::Ustp: return "ustp";
    }
    return "?";
}

std::optional<ConfigKind> parse_config_kind(const std::string& name) {
    if (name == "iud_hv") return ConfigKind::IudHv;
    if (name == "iud_four") return ConfigKind::IudFour;
    if (name == "box") return ConfigKind::Box;
    if (name == "line") return ConfigKind::Line;
    if (name == "alternating") return ConfigKind::Alternating;
    if (name == "ustp") return ConfigKind::Ustp;
    return std::nullopt;
}

int arg_sector(Vertex v) {
    assert(!(v.x == 0 && v.y == 0));
    const int x = v.x, y = v.y;
    if (x > 0 && -x < y && y <= x) return 0;
    if (y > 0 && -y <= x && x < y) return 1;
    if (y < 0 && y < x && x <= -y) return 3;
    return 2;
}

Direction box_rotor(Vertex v) {
    if (v == origin) return Direction::East;
    switch (arg_sector(v)) {
        case 0: return Direction::North;
        case 1: return Direction::West;
        case 2: return Direction::South;
        default: return Direction::East;
    }
}

Direction line_rotor(Vertex v) {
    if (v == origin) return Direction::East;
    switch (arg_sector(v)) {
        case 0: return Direction::East;
        case 1: return Direction::North;
        case 2: return Direction::West;
        default: return Direction::South;
    }
}

Direction alternating_rotor(Vertex v) {
    return ((v.y - v.x) & 1) == 0 ? Direction::East : Direction::North;
}

Grid<int8_t> wilson_ustp_tree(int radius, uint64_t seed) {
    if (radius < 2)
        throw std::invalid_argument("wilson_ustp_tree: radius must be >= 2");
    Rng rng(derive_seed(seed, 0x75737470ULL));

    const int half = radius;  // B_radius fits in |x|_inf <= radius
    Grid<int8_t> next(half, int8_t(-1));
    Grid<uint8_t> in_ball(half, 0), in_tree(half, 0);
    std::vector<Vertex> cells = ball(radius);
    for (Vertex v : cells) in_ball(v) = 1;
    in_tree(origin) = 1;

    auto random_exit = [&](Vertex v) {
        // Uniform over the ball-internal neighbors of v.
        Direction ds[4];
        int cnt = 0;
        for (int d = 0; d < 4; ++d) {
            Vertex w = v + step_of(Direction(d));
            if (in_ball.contains(w) && in_ball(w)) ds[cnt++] = Direction(d);
        }
        return ds[rng.below(uint32_t(cnt))];
    };

    for (Vertex start : cells) {
        if (in_tree(start)) continue;
        Vertex u = start;
        while (!in_tree(u)) {  // random walk, cycles erased via next[]
            Direction d = random_exit(u);
            next(u) = int8_t(d);
            u = u + step_of(d);
        }
        u = start;
        while (!in_tree(u)) {
            in_tree(u) = 1;
            u = u + step_of(Direction(next(u)));
        }
    }

    // Rotor at the origin: uniform over its four neighbors, independent.
    next(origin) = int8_t(rng.below(4));
    // Cells of the square window outside the ball stay -1 (unused).
    return next;
}

RotorConfig::RotorConfig(ConfigKind kind, uint64_t seed, int ustp_radius)
    : kind_(kind), seed_(seed), ustp_radius_(ustp_radius) {
    if (kind_ == ConfigKind::Ustp) {
        if (ustp_radius_ < 2)
            throw std::invalid_argument("RotorConfig: ustp radius must be >= 2");
        tree_ = wilson_ustp_tree(ustp_radius_, seed_);
    }
}

Direction RotorConfig::at(Vertex v) const {
    switch (kind_) {
        case ConfigKind::IudHv:
            return (vertex_hash(seed_, v) & 1) ? Direction::North
                                               : Direction::East;
        case ConfigKind::IudFour:
            return Direction(vertex_hash(seed_, v) & 3);
        case ConfigKind::Box: return box_rotor(v);
        case ConfigKind::Line: return line_rotor(v);
        case ConfigKind::Alternating: return alternating_rotor(v);
        case ConfigKind::Ustp:
            if (tree_.contains(v) && tree_(v) >= 0)
                return Direction(tree_(v));
            return Direction(vertex_hash(derive_seed(seed_, 0xfa11bacULL), v) &
                             3);
    }
    return Direction::East;
}

LabelLawReport label_law_check(ConfigKind kind, Vertex v, int64_t samples,
                               uint64_t base_seed) {
    LabelLawReport rep;
    rep.samples = samples;
    rep.deterministic = (kind == ConfigKind::Box || kind == ConfigKind::Line ||
                         kind == ConfigKind::Alternating);
    for (int64_t i = 0; i < samples; ++i) {
        RotorConfig cfg(kind, derive_seed(base_seed, uint64_t(i)),
                        kind == ConfigKind::Ustp ? 8 : 0);
        if (cfg.label_at(v) == Label::H) ++rep.h_count;
    }
    rep.h_frequency =
        samples > 0 ? double(rep.h_count) / double(samples) : 0.0;
    return rep;
}

}  // namespace hv
