#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hv/lattice.hpp"
#include "hv/rotor_configs.hpp"

namespace hv {

/// A word y_1 ... y_m of lattice vertices; the empty word is allowed.
using Word = std::vector<Vertex>;

/// Labels on the 5x5 box around a center x, packed one bit per cell
/// (bit 1 = V). Offsets range over [-2,2]^2.
struct BoxLabels {
    uint32_t bits = 0;

    static int index(Vertex off) { return (off.y + 2) * 5 + (off.x + 2); }
    static bool in_box(Vertex off) {
        return off.x >= -2 && off.x <= 2 && off.y >= -2 && off.y <= 2;
    }
    Label get(Vertex off) const {
        return (bits >> index(off)) & 1u ? Label::V : Label::H;
    }
    void set(Vertex off, Label l) {
        uint32_t m = 1u << index(off);
        bits = l == Label::V ? (bits | m) : (bits & ~m);
    }
    friend bool operator==(const BoxLabels&, const BoxLabels&) = default;
};

/// Reads the 25 labels around x out of a rotor configuration.
BoxLabels box_labels_from_config(const RotorConfig& cfg, Vertex x);

/// A(x): the 5x5 box around x minus x itself (24 vertices).
bool in_A(Vertex v, Vertex x);
/// D(x): the outer layer of A(x) (16 vertices).
bool in_D(Vertex v, Vertex x);
std::vector<Vertex> A_of(Vertex x);
std::vector<Vertex> D_of(Vertex x);

/// Checks the q = 1 admissibility of w from (start, labels): every step is a
/// lattice step whose axis is forced by the pre-step label at its departure
/// vertex. Labels are read lazily from `initial` and evolved in `overlay`
/// (which doubles as the returned final configuration on touched cells).
bool is_admissible(const Word& w, Vertex start,
                   const std::function<Label(Vertex)>& initial,
                   std::unordered_map<Vertex, Label, VertexHash>& overlay);

/// Convenience form over a rotor configuration; returns the evolved overlay.
struct AdmissibilityResult {
    bool admissible = false;
    std::unordered_map<Vertex, Label, VertexHash> final_labels;
};
AdmissibilityResult check_admissible(const Word& w, Vertex start,
                                     const RotorConfig& cfg);

/// Shortest admissible word inside A(x) from y to y' (adjacent to y in
/// A(x)); exists with length <= 5 for every labeling. Returns the word in
/// absolute coordinates, or nullopt if the budget is exceeded (a refutation).
std::optional<Word> find_word_lemma1(Vertex x, Vertex y, Vertex y_prime,
                                     BoxLabels eta, int max_len = 5);

struct Lemma2Word {
    Word word;                      // absolute coordinates
    std::array<int, 6> stage_len{};  // lengths of the six stages
};

/// The six-stage surgery word for y in D(x): admissible for (y, eta), ends
/// at y with the label at y restored, stays in A(x) u {x}, visits x exactly
/// once, and has length <= 58 (stage budgets 15+6+1+1+25+10).
std::optional<Lemma2Word> find_word_lemma2(Vertex x, Vertex y, BoxLabels eta);

/// Path surgery on a word of J_1(rho, x): inserts a lemma-2 excursion after
/// the last D(x) visit. The image gains exactly one visit to x and at most
/// 58 steps, and remains tau-terminal. Throws std::invalid_argument when w
/// is not in J_1.
Word phi(const Word& w, const RotorConfig& rho, Vertex x, int64_t k, int r);

/// Validates membership in J(rho) (tau-terminal admissible words from the
/// origin): either ends at the origin with exactly k origin occurrences, or
/// ends on dB_r with no earlier dB_r occurrence. Also reports the x count.
struct TauCheck {
    bool in_J = false;
    int64_t x_count = 0;
};
TauCheck check_tau_terminal(const Word& w, const RotorConfig& rho, Vertex x,
                            int64_t k, int r);

struct ParityEnumeration {
    double p_even = 0.0;  // terminal mass with a positive even x count
    double p_odd = 0.0;
    double p_zero = 0.0;
    double residual = 0.0;  // mass of unexpanded depth-L prefixes
    int depth = 0;
    uint64_t node_count = 0;
    bool mass_exact = false;  // integer dyadic identity held exactly
};

/// Exhaustive expansion of the q = 1 outcome tree (two equiprobable moves
/// per step) down to depth L, with exact dyadic mass accounting.
/// Requires r >= 7 and x in B_{r-3} \ B_3.
ParityEnumeration enumerate_parities(const RotorConfig& rho, Vertex x,
                                     int64_t k, int r, int depth);

/// Streams every tau-terminal word of depth <= L to fn(word, x_count).
void enumerate_terminal_words(
    const RotorConfig& rho, Vertex x, int64_t k, int r, int depth,
    const std::function<void(const Word&, int64_t)>& fn);

/// Monte Carlo estimate of the parity probabilities via frozen runs with
/// the same quenched configuration; the independent cross-oracle for the
/// enumeration.
struct ParityMc {
    int64_t trials = 0;
    int64_t even = 0, odd = 0, zero = 0;
    double p_even = 0.0, p_odd = 0.0, p_zero = 0.0;
};
ParityMc mc_parity_estimate(const RotorConfig& rho, Vertex x, int64_t k, int r,
                            int64_t trials, uint64_t seed, int threads = 1);

}  // namespace hv
