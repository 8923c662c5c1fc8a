#pragma once

#include <cstdint>

#include "hv/lattice.hpp"

namespace hv {

/// SplitMix64 step; used for seeding and for counter-based per-vertex draws.
constexpr uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from (master, index).
constexpr uint64_t derive_seed(uint64_t master, uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Stateless hash of (seed, vertex, counter); backs lazy random environments
/// so a quenched configuration is revisitable without materializing Z^2.
constexpr uint64_t vertex_hash(uint64_t seed, Vertex v, uint64_t counter = 0) {
    uint64_t h = splitmix64(seed ^ 0xd1b54a32d192ed03ULL);
    h = splitmix64(h ^ vertex_key(v));
    if (counter) h = splitmix64(h ^ counter);
    return h;
}

/// xoshiro256++ (Blackman/Vigna). Hand-rolled so trial streams are
/// byte-reproducible across compilers; std distributions are not.
class Rng {
  public:
    explicit Rng(uint64_t seed = 1) {
        uint64_t z = seed;
        for (auto& w : s_) w = z = splitmix64(z);
    }

    uint64_t next() {
        auto rotl = [](uint64_t v, int k) {
            return (v << k) | (v >> (64 - k));
        };
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1).
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n); n must be positive.
    uint32_t below(uint32_t n) {
        // Lemire's multiply-shift rejection sampler.
        uint64_t x = next() >> 32;
        uint64_t m = x * n;
        uint32_t l = uint32_t(m);
        if (l < n) {
            uint32_t t = (0u - n) % n;
            while (l < t) {
                x = next() >> 32;
                m = x * n;
                l = uint32_t(m);
            }
        }
        return uint32_t(m >> 32);
    }

    bool coin() { return (next() >> 63) != 0; }

  private:
    uint64_t s_[4];
};

}  // namespace hv
