#include "hv/stack_engine.hpp"

#include <algorithm>

namespace hv {

FiniteGraph random_connected_graph(int n, int extra_edges, Rng& rng) {
    FiniteGraph g;
    g.adj.resize(size_t(n));
    std::vector<std::pair<int, int>> edges;
    auto has_edge = [&](int a, int b) {
        for (int w : g.adj[size_t(a)])
            if (w == b) return true;
        return false;
    };
    auto add_edge = [&](int a, int b) {
        g.adj[size_t(a)].push_back(b);
        g.adj[size_t(b)].push_back(a);
    };
    // Random attachment tree keeps the graph connected.
    for (int v = 1; v < n; ++v) add_edge(v, int(rng.below(uint32_t(v))));
    for (int e = 0; e < extra_edges; ++e) {
        int a = int(rng.below(uint32_t(n)));
        int b = int(rng.below(uint32_t(n)));
        if (a != b && !has_edge(a, b)) add_edge(a, b);
    }
    return g;
}

FiniteSinkInstance random_sink_instance(uint64_t seed) {
    Rng rng(seed);
    const int n = 6 + int(rng.below(15));           // 6..20 vertices
    const int extra = int(rng.below(uint32_t(n)));  // 0..n-1 extra edges
    FiniteSinkInstance inst;
    inst.graph = random_connected_graph(n, extra, rng);

    const int walkers = 1 + int(rng.below(4));  // 1..4
    for (int i = 0; i < walkers; ++i)
        inst.walkers.push_back(int(rng.below(uint32_t(n))));

    inst.a_sink.assign(size_t(n), 0);
    const int sinks = 1 + int(rng.below(3));  // 1..3
    for (int i = 0; i < sinks; ++i) inst.a_sink[rng.below(uint32_t(n))] = 1;

    auto rule = rng.coin() ? FiniteStack::Rule::Cyclic
                           : FiniteStack::Rule::Seeded;
    inst.stack = FiniteStack(inst.graph, rule, rng.next());
    return inst;
}

namespace {

AbsorptionResult run_impl(const FiniteSinkInstance& inst,
                          const TurnOrder& order, int64_t move_cap,
                          int64_t slot_cap, int64_t slot_limit) {
    const int n = inst.graph.size();
    AbsorptionResult res;
    res.frozen_at.assign(size_t(n), 0);
    res.odometer.assign(size_t(n), 0);

    FiniteStack stack = inst.stack;
    std::vector<int> pos = inst.walkers;
    auto frozen = [&](int i) { return inst.a_sink[size_t(pos[size_t(i)])]; };

    int active = 0;
    for (size_t i = 0; i < pos.size(); ++i)
        if (!inst.a_sink[size_t(pos[i])]) ++active;

    if (slot_cap == 0) slot_cap = 200 * move_cap + 10000;

    int64_t slot = 0;
    while (active > 0) {
        if (slot_limit > 0 && slot >= slot_limit) break;
        if (slot >= slot_cap || res.total_moves >= move_cap) return res;
        ++slot;
        int w = order.at(slot);
        if (w == 0) continue;
        int i = w - 1;
        if (i >= int(pos.size()) || frozen(i)) continue;
        int v = pos[size_t(i)];
        stack.pop(v);
        int to = stack.top(inst.graph, v);
        pos[size_t(i)] = to;
        ++res.odometer[size_t(to)];
        ++res.total_moves;
        if (inst.a_sink[size_t(to)]) --active;
    }
    res.completed = (active == 0);
    for (size_t i = 0; i < pos.size(); ++i)
        if (inst.a_sink[size_t(pos[i])]) ++res.frozen_at[size_t(pos[i])];
    return res;
}

}  // namespace

AbsorptionResult run_to_absorption(const FiniteSinkInstance& inst,
                                   const TurnOrder& order, int64_t move_cap,
                                   int64_t slot_cap) {
    return run_impl(inst, order, move_cap, slot_cap, 0);
}

AbsorptionResult run_partial(const FiniteSinkInstance& inst,
                             const TurnOrder& order, int64_t slots,
                             int64_t move_cap) {
    return run_impl(inst, order, move_cap, 0, slots);
}

MonotonicityReport check_monotonicity(const FiniteSinkInstance& inst,
                                      const TurnOrder& order_a,
                                      int64_t slots_a,
                                      const TurnOrder& order_b) {
    AbsorptionResult a = run_partial(inst, order_a, slots_a);
    AbsorptionResult b = run_to_absorption(inst, order_b);
    MonotonicityReport rep;
    for (int v = 0; v < inst.graph.size(); ++v) {
        if (a.odometer[size_t(v)] > b.odometer[size_t(v)]) {
            rep.holds = false;
            rep.counterexample_vertex = v;
            rep.count_a = a.odometer[size_t(v)];
            rep.count_b = b.odometer[size_t(v)];
            return rep;
        }
    }
    return rep;
}

}  // namespace hv
