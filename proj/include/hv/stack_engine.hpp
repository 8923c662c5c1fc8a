#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hv/lattice.hpp"
#include "hv/rng.hpp"

namespace hv {

/// A lazy infinite stack on Z^2: the generator rule is consulted on demand
/// and never materialized; per-vertex pop counts are the only state.
class LatticeStack {
  public:
    enum class Rule {
        Cyclic,  // item(v, m) cycles E,W,N,S from a per-vertex offset; regular
        Seeded   // item(v, m) hashed from (seed, v, m); regular a.s.
    };

    LatticeStack(Rule rule, uint64_t seed) : rule_(rule), seed_(seed) {}

    /// Generator value xi(v, m), m >= 0, counted past the pops.
    Vertex item(Vertex v, int64_t m) const {
        uint32_t idx;
        if (rule_ == Rule::Cyclic)
            idx = uint32_t((vertex_hash(seed_, v) + uint64_t(m)) & 3);
        else
            idx = uint32_t(vertex_hash(seed_, v, uint64_t(m) + 1) & 3);
        return neighbors(v)[idx];
    }

    int64_t popped_count(Vertex v) const {
        auto it = popped_.find(vertex_key(v));
        return it == popped_.end() ? 0 : it->second;
    }

    /// Current top item of the stack at v.
    Vertex top(Vertex v) const { return item(v, popped_count(v)); }

    /// The popping operation phi_v.
    void pop(Vertex v) { ++popped_[vertex_key(v)]; }

  private:
    Rule rule_;
    uint64_t seed_;
    std::unordered_map<uint64_t, int64_t> popped_;
};

/// Multi-walker stack walk on Z^2. One step of walker i pops the stack at
/// its location and moves the walker to the new top.
class LatticeStackWalk {
  public:
    LatticeStackWalk(LatticeStack stack, std::vector<Vertex> walkers)
        : stack_(std::move(stack)), walkers_(std::move(walkers)) {}

    Vertex position(size_t i) const { return walkers_[i]; }
    size_t walker_count() const { return walkers_.size(); }
    LatticeStack& stack() { return stack_; }

    /// Performs one step of walker i and returns its new position.
    Vertex step(size_t i) {
        Vertex v = walkers_[i];
        stack_.pop(v);
        walkers_[i] = stack_.top(v);
        return walkers_[i];
    }

  private:
    LatticeStack stack_;
    std::vector<Vertex> walkers_;
};

/// A finite simple connected graph with fixed-order adjacency lists.
struct FiniteGraph {
    std::vector<std::vector<int>> adj;
    int size() const { return int(adj.size()); }
};

/// Seeded connected graph: a random attachment tree plus extra edges.
FiniteGraph random_connected_graph(int n, int extra_edges, Rng& rng);

/// A finite stack over a FiniteGraph; same shape as the lattice stack.
class FiniteStack {
  public:
    enum class Rule { Cyclic, Seeded };

    FiniteStack() = default;
    FiniteStack(const FiniteGraph& g, Rule rule, uint64_t seed)
        : rule_(rule), seed_(seed), popped_(g.adj.size(), 0) {}

    int item(const FiniteGraph& g, int v, int64_t m) const {
        const auto& nb = g.adj[size_t(v)];
        uint64_t deg = nb.size();
        uint64_t idx;
        if (rule_ == Rule::Cyclic)
            idx = (splitmix64(seed_ ^ uint64_t(v)) + uint64_t(m)) % deg;
        else
            idx = splitmix64(seed_ ^ (uint64_t(v) << 32) ^
                             splitmix64(uint64_t(m) + 1)) %
                  deg;
        return nb[size_t(idx)];
    }

    int top(const FiniteGraph& g, int v) const {
        return item(g, v, popped_[size_t(v)]);
    }
    void pop(int v) { ++popped_[size_t(v)]; }
    int64_t popped_count(int v) const { return popped_[size_t(v)]; }

  private:
    Rule rule_ = Rule::Cyclic;
    uint64_t seed_ = 0;
    std::vector<int64_t> popped_;
};

/// Stack-walk instance on a finite graph where walkers freeze on sinks.
struct FiniteSinkInstance {
    FiniteGraph graph;
    std::vector<int> walkers;     // start vertices (multiset)
    std::vector<uint8_t> a_sink;  // per-vertex sink flag; at least one set
    FiniteStack stack;
};

FiniteSinkInstance random_sink_instance(uint64_t seed);

/// A turn order: slot t >= 1 -> walker in {0..n}, 0 meaning nobody moves.
class TurnOrder {
  public:
    enum class Kind {
        Cyclic,         // 1, 2, ..., n, 1, ... (regular)
        SeededUniform,  // iid uniform over {1..n} (regular a.s.)
        SeededStalling  // iid uniform over {0..n}; may also exclude a walker
    };

    static TurnOrder cyclic(int n) { return {Kind::Cyclic, n, 0, 0}; }
    static TurnOrder seeded(int n, uint64_t seed) {
        return {Kind::SeededUniform, n, seed, 0};
    }
    static TurnOrder stalling(int n, uint64_t seed, int excluded = 0) {
        return {Kind::SeededStalling, n, seed, excluded};
    }

    int n() const { return n_; }
    bool regular() const { return kind_ != Kind::SeededStalling; }

    /// Walker scheduled at slot t (t >= 1); 0 = nobody.
    int at(int64_t t) const {
        switch (kind_) {
            case Kind::Cyclic: return int((t - 1) % n_) + 1;
            case Kind::SeededUniform:
                return int(splitmix64(seed_ ^ uint64_t(t)) % uint64_t(n_)) + 1;
            case Kind::SeededStalling: {
                int w = int(splitmix64(seed_ ^ uint64_t(t)) %
                            uint64_t(n_ + 1));
                return w == excluded_ ? 0 : w;
            }
        }
        return 0;
    }

  private:
    TurnOrder(Kind k, int n, uint64_t seed, int excluded)
        : kind_(k), n_(n), seed_(seed), excluded_(excluded) {}
    Kind kind_;
    int n_;
    uint64_t seed_;
    int excluded_;
};

struct AbsorptionResult {
    std::vector<int64_t> frozen_at;  // frozen walkers per vertex
    std::vector<int64_t> odometer;   // arrivals into each vertex after t=0
    int64_t total_moves = 0;
    bool completed = false;  // all walkers frozen within the caps

    friend bool operator==(const AbsorptionResult&,
                           const AbsorptionResult&) = default;
};

/// Runs the sink walk until all walkers freeze. With a regular order and the
/// default caps this always completes; the result is then independent of the
/// order (least action). slot_cap / move_cap exceeded leaves
/// completed = false so a non-regular stack or order surfaces as a
/// diagnostic rather than a hang.
AbsorptionResult run_to_absorption(const FiniteSinkInstance& inst,
                                   const TurnOrder& order,
                                   int64_t move_cap = 1'000'000,
                                   int64_t slot_cap = 0);

/// Runs the sink walk under `order` for at most `slots` slots (0 = until
/// absorption) and reports the arrival counts.
AbsorptionResult run_partial(const FiniteSinkInstance& inst,
                             const TurnOrder& order, int64_t slots,
                             int64_t move_cap = 1'000'000);

struct MonotonicityReport {
    bool holds = true;
    int counterexample_vertex = -1;
    int64_t count_a = 0;
    int64_t count_b = 0;
};

/// Vertex-wise visit monotonicity: arrivals under an arbitrary (possibly
/// stalling, possibly truncated) order never exceed those of a regular
/// order run to absorption.
MonotonicityReport check_monotonicity(const FiniteSinkInstance& inst,
                                      const TurnOrder& order_a,
                                      int64_t slots_a,
                                      const TurnOrder& order_b);

}  // namespace hv
