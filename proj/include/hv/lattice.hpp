#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hv {

/// A point of the square lattice Z^2.
struct Vertex {
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;
    constexpr Vertex operator+(Vertex o) const { return {x + o.x, y + o.y}; }
    constexpr Vertex operator-(Vertex o) const { return {x - o.x, y - o.y}; }
};

constexpr Vertex origin{0, 0};

inline double norm(Vertex v) { return std::hypot(double(v.x), double(v.y)); }
inline int64_t norm2(Vertex v) {
    return int64_t(v.x) * v.x + int64_t(v.y) * v.y;
}

/// The four unit directions, in the canonical order E, W, N, S.
/// This order is fixed globally; stack indices and enumeration orders
/// depend on it, so replays stay bit-exact.
enum class Direction : uint8_t { East = 0, West = 1, North = 2, South = 3 };

enum class Label : uint8_t { H = 0, V = 1 };

constexpr std::array<Vertex, 4> direction_steps{
    Vertex{1, 0}, Vertex{-1, 0}, Vertex{0, 1}, Vertex{0, -1}};

constexpr Vertex step_of(Direction d) {
    return direction_steps[static_cast<size_t>(d)];
}

constexpr Label label_of(Direction d) {
    return (d == Direction::East || d == Direction::West) ? Label::H : Label::V;
}

constexpr Label flip(Label l) { return l == Label::H ? Label::V : Label::H; }

/// 90-degree rotations of a direction (counter-clockwise / clockwise).
constexpr Direction rotate_ccw(Direction d) {
    switch (d) {
        case Direction::East: return Direction::North;
        case Direction::North: return Direction::West;
        case Direction::West: return Direction::South;
        case Direction::South: return Direction::East;
    }
    return Direction::East;
}

constexpr Direction rotate_cw(Direction d) {
    switch (d) {
        case Direction::East: return Direction::South;
        case Direction::South: return Direction::West;
        case Direction::West: return Direction::North;
        case Direction::North: return Direction::East;
    }
    return Direction::East;
}

constexpr char direction_char(Direction d) {
    switch (d) {
        case Direction::East: return 'E';
        case Direction::West: return 'W';
        case Direction::North: return 'N';
        case Direction::South: return 'S';
    }
    return '?';
}

/// Neighbors of v in the canonical order E, W, N, S.
inline std::array<Vertex, 4> neighbors(Vertex v) {
    return {Vertex{v.x + 1, v.y}, Vertex{v.x - 1, v.y}, Vertex{v.x, v.y + 1},
            Vertex{v.x, v.y - 1}};
}

/// The argument of v as the unique angle in (-pi, pi]; (-1, 0) maps to +pi.
inline double arg_of(Vertex v) {
    if (v.x == 0 && v.y == 0)
        throw std::domain_error("arg_of: undefined at the origin");
    return std::atan2(double(v.y), double(v.x));
}

/// Open Euclidean ball B_r = {x : |x| < r}, enumerated row-major.
std::vector<Vertex> ball(double r);

/// Outer boundary of B_r: vertices outside B_r with a neighbor inside.
std::vector<Vertex> ball_boundary(double r);

inline bool in_ball(Vertex v, double r) { return norm2(v) < r * r; }

inline bool on_boundary(Vertex v, double r) {
    if (in_ball(v, r)) return false;
    for (Vertex w : neighbors(v))
        if (in_ball(w, r)) return true;
    return false;
}

/// Dense square window [-half, half]^2 addressed by lattice coordinates.
template <class T>
class Grid {
  public:
    Grid() = default;
    Grid(int half, T fill = T{})
        : half_(half), side_(2 * half + 1),
          data_(size_t(side_) * side_, fill) {}

    int half() const { return half_; }
    int side() const { return side_; }
    bool contains(Vertex v) const {
        return std::abs(v.x) <= half_ && std::abs(v.y) <= half_;
    }
    T& operator()(Vertex v) { return data_[index(v)]; }
    const T& operator()(Vertex v) const { return data_[index(v)]; }
    T& operator()(int x, int y) { return (*this)(Vertex{x, y}); }
    const T& operator()(int x, int y) const { return (*this)(Vertex{x, y}); }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }
    size_t size() const { return data_.size(); }

    void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

  private:
    size_t index(Vertex v) const {
        return size_t(v.y + half_) * side_ + size_t(v.x + half_);
    }
    int half_ = 0;
    int side_ = 1;
    std::vector<T> data_{T{}};
};

/// Packs a vertex into a hashable 64-bit key.
constexpr uint64_t vertex_key(Vertex v) {
    return (uint64_t(uint32_t(v.x)) << 32) | uint64_t(uint32_t(v.y));
}

struct VertexHash {
    size_t operator()(Vertex v) const {
        uint64_t z = vertex_key(v) + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return size_t(z ^ (z >> 31));
    }
};

}  // namespace hv
