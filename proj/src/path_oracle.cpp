#include "hv/path_oracle.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <stdexcept>
#include <unordered_set>

#include "hv/farm.hpp"
#include "hv/rwlm.hpp"

namespace hv {

BoxLabels box_labels_from_config(const RotorConfig& cfg, Vertex x) {
    BoxLabels b;
    for (int j = -2; j <= 2; ++j)
        for (int i = -2; i <= 2; ++i)
            b.set(Vertex{i, j}, cfg.label_at(Vertex{x.x + i, x.y + j}));
    return b;
}

bool in_A(Vertex v, Vertex x) {
    Vertex off = v - x;
    return BoxLabels::in_box(off) && !(off == origin);
}

bool in_D(Vertex v, Vertex x) {
    Vertex off = v - x;
    return BoxLabels::in_box(off) &&
           (std::abs(off.x) == 2 || std::abs(off.y) == 2);
}

std::vector<Vertex> A_of(Vertex x) {
    std::vector<Vertex> out;
    for (int j = -2; j <= 2; ++j)
        for (int i = -2; i <= 2; ++i)
            if (!(i == 0 && j == 0)) out.push_back(Vertex{x.x + i, x.y + j});
    return out;
}

std::vector<Vertex> D_of(Vertex x) {
    std::vector<Vertex> out;
    for (Vertex v : A_of(x))
        if (in_D(v, x)) out.push_back(v);
    return out;
}

bool is_admissible(const Word& w, Vertex start,
                   const std::function<Label(Vertex)>& initial,
                   std::unordered_map<Vertex, Label, VertexHash>& overlay) {
    Vertex pos = start;
    for (Vertex to : w) {
        Vertex d = to - pos;
        bool horizontal = (d == Vertex{1, 0}) || (d == Vertex{-1, 0});
        bool vertical = (d == Vertex{0, 1}) || (d == Vertex{0, -1});
        if (!horizontal && !vertical) return false;
        auto it = overlay.find(pos);
        Label l = it != overlay.end() ? it->second : initial(pos);
        // A horizontal step needs pre-step label V (it flips to H), and a
        // vertical step needs H.
        if (horizontal && l != Label::V) return false;
        if (vertical && l != Label::H) return false;
        overlay[pos] = horizontal ? Label::H : Label::V;
        pos = to;
    }
    return true;
}

AdmissibilityResult check_admissible(const Word& w, Vertex start,
                                     const RotorConfig& cfg) {
    AdmissibilityResult res;
    res.admissible = is_admissible(
        w, start, [&cfg](Vertex v) { return cfg.label_at(v); },
        res.final_labels);
    return res;
}

namespace {

// Breadth-first search over (position in the 5x5 box, box labels) states.
// The label at the departure cell flips to the step's axis label, so a
// state is fully described by (pos, bits); states are deduplicated.
struct BoxSearchSpec {
    Vertex x;
    Vertex start;                     // absolute; inside the box
    std::vector<Vertex> targets;      // absolute goal positions
    int max_len = 5;
    bool allow_x = false;             // permit stepping on the center
    bool avoid_target_internal = false;
    std::optional<Label> final_label_at_target;
};

std::optional<Word> box_bfs(const BoxSearchSpec& spec, BoxLabels eta) {
    struct Node {
        int8_t pos;  // box index of the offset
        uint32_t bits;
        int32_t parent;
        int8_t dir;  // direction index of the arriving step
    };
    auto off_of = [&](Vertex v) { return v - spec.x; };
    auto idx_of = [&](Vertex v) { return BoxLabels::index(off_of(v)); };
    auto is_target = [&](Vertex v) {
        return std::find(spec.targets.begin(), spec.targets.end(), v) !=
               spec.targets.end();
    };

    std::vector<Node> nodes;
    std::unordered_set<uint64_t> seen;
    auto key = [](int pos, uint32_t bits) {
        return (uint64_t(bits) << 5) | uint64_t(pos);
    };
    nodes.push_back(Node{int8_t(idx_of(spec.start)), eta.bits, -1, -1});
    seen.insert(key(nodes[0].pos, nodes[0].bits));

    auto vertex_of = [&](int pos) {
        return spec.x + Vertex{pos % 5 - 2, pos / 5 - 2};
    };
    auto reconstruct = [&](int leaf) {
        Word w;
        for (int i = leaf; nodes[size_t(i)].parent >= 0;
             i = nodes[size_t(i)].parent)
            w.push_back(vertex_of(nodes[size_t(i)].pos));
        std::reverse(w.begin(), w.end());
        return w;
    };

    size_t frontier_begin = 0, frontier_end = 1;
    for (int depth = 1; depth <= spec.max_len && frontier_begin < frontier_end;
         ++depth) {
        for (size_t ni = frontier_begin; ni < frontier_end; ++ni) {
            Node node = nodes[ni];
            Vertex pos = vertex_of(node.pos);
            BoxLabels labels{node.bits};
            Label l = labels.get(off_of(pos));
            Label nl = flip(l);
            labels.set(off_of(pos), nl);
            Vertex axis = nl == Label::H ? Vertex{1, 0} : Vertex{0, 1};
            for (int sense : {+1, -1}) {
                Vertex to{pos.x + sense * axis.x, pos.y + sense * axis.y};
                if (!BoxLabels::in_box(off_of(to))) continue;
                if (!spec.allow_x && to == spec.x) continue;
                if (is_target(to)) {
                    if (!spec.final_label_at_target ||
                        labels.get(off_of(to)) ==
                            *spec.final_label_at_target) {
                        nodes.push_back(Node{int8_t(idx_of(to)), labels.bits,
                                             int32_t(ni), 0});
                        return reconstruct(int(nodes.size() - 1));
                    }
                    if (spec.avoid_target_internal) continue;
                }
                uint64_t k = key(idx_of(to), labels.bits);
                if (!seen.insert(k).second) continue;
                nodes.push_back(Node{int8_t(idx_of(to)), labels.bits,
                                     int32_t(ni), 0});
            }
        }
        frontier_begin = frontier_end;
        frontier_end = nodes.size();
    }
    return std::nullopt;
}

// Replays an absolute-coordinate word over box labels (all departures must
// stay inside the box).
void apply_word_to_box(BoxLabels& labels, Vertex x, Vertex start,
                       const Word& w) {
    Vertex pos = start;
    for (Vertex to : w) {
        Vertex d = to - pos;
        bool horizontal = d.y == 0;
        labels.set(pos - x, horizontal ? Label::H : Label::V);
        pos = to;
    }
}

// Geometric shortest path between two cells of A(x) (never through x),
// as a sequence of cells excluding `from`.
std::vector<Vertex> a_graph_path(Vertex x, Vertex from, Vertex to) {
    std::array<int, 25> parent;
    parent.fill(-2);
    auto idx = [&](Vertex v) { return BoxLabels::index(v - x); };
    std::vector<int> queue{idx(from)};
    parent[size_t(idx(from))] = -1;
    auto vert = [&](int i) { return x + Vertex{i % 5 - 2, i / 5 - 2}; };
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        Vertex v = vert(queue[qi]);
        if (v == to) break;
        for (Vertex w : neighbors(v)) {
            if (!in_A(w, x)) continue;
            if (parent[size_t(idx(w))] != -2) continue;
            parent[size_t(idx(w))] = queue[qi];
            queue.push_back(idx(w));
        }
    }
    std::vector<Vertex> path;
    int cur = idx(to);
    if (parent[size_t(cur)] == -2)
        throw std::logic_error("a_graph_path: A(x) is connected; unreachable");
    while (parent[size_t(cur)] >= 0) {
        path.push_back(vert(cur));
        cur = parent[size_t(cur)];
    }
    std::reverse(path.begin(), path.end());
    return path;
}

// Chains lemma-1 hops along the geometric path from `from` to `to`,
// updating labels; the hop count times 5 bounds the length.
std::optional<Word> route_via_hops(Vertex x, Vertex from, Vertex to,
                                   BoxLabels& labels) {
    Word out;
    Vertex cur = from;
    for (Vertex next : a_graph_path(x, from, to)) {
        auto hop = find_word_lemma1(x, cur, next, labels);
        if (!hop) return std::nullopt;
        apply_word_to_box(labels, x, cur, *hop);
        out.insert(out.end(), hop->begin(), hop->end());
        cur = next;
    }
    return out;
}

// One admissible step out of `pos` staying inside A(x); exists for every
// cell of the box (the in-box sense of the forced axis is never x).
std::optional<Vertex> depart_step(Vertex x, Vertex pos, const BoxLabels& labels) {
    Label nl = flip(labels.get(pos - x));
    Vertex axis = nl == Label::H ? Vertex{1, 0} : Vertex{0, 1};
    for (int sense : {+1, -1}) {
        Vertex to{pos.x + sense * axis.x, pos.y + sense * axis.y};
        if (BoxLabels::in_box(to - x) && !(to == x)) return to;
    }
    return std::nullopt;
}

// Leave `pos` once and return to it without visiting it in between; used
// by stages w2 and w6 to flip the label at `pos`.
std::optional<Word> flip_label_excursion(Vertex x, Vertex pos,
                                         BoxLabels& labels, int budget) {
    auto out = depart_step(x, pos, labels);
    if (!out) return std::nullopt;
    BoxLabels after = labels;
    apply_word_to_box(after, x, pos, Word{*out});
    BoxSearchSpec spec;
    spec.x = x;
    spec.start = *out;
    spec.targets = {pos};
    spec.max_len = budget - 1;
    spec.avoid_target_internal = true;
    auto back = box_bfs(spec, after);
    if (!back) return std::nullopt;
    Word w{*out};
    w.insert(w.end(), back->begin(), back->end());
    apply_word_to_box(labels, x, pos, w);
    return w;
}

}  // namespace

std::optional<Word> find_word_lemma1(Vertex x, Vertex y, Vertex y_prime,
                                     BoxLabels eta, int max_len) {
    if (!in_A(y, x) || !in_A(y_prime, x))
        throw std::invalid_argument("find_word_lemma1: y, y' must lie in A(x)");
    BoxSearchSpec spec;
    spec.x = x;
    spec.start = y;
    spec.targets = {y_prime};
    spec.max_len = max_len;
    return box_bfs(spec, eta);
}

std::optional<Lemma2Word> find_word_lemma2(Vertex x, Vertex y, BoxLabels eta) {
    if (!in_D(y, x))
        throw std::invalid_argument("find_word_lemma2: y must lie in D(x)");
    constexpr std::array<int, 6> budget{15, 6, 1, 1, 25, 10};
    const Label y_label = eta.get(y - x);

    Lemma2Word out;
    BoxLabels labels = eta;
    Vertex cur = y;

    auto append = [&](const Word& w, int stage) -> bool {
        if (int(w.size()) > budget[size_t(stage)]) return false;
        out.stage_len[size_t(stage)] = int(w.size());
        out.word.insert(out.word.end(), w.begin(), w.end());
        if (!w.empty()) cur = w.back();
        return true;
    };

    // Stage 1: reach a neighbor of x (shortest of the four as hop targets).
    {
        Word best;
        bool found = false;
        for (Vertex nb : neighbors(x)) {
            BoxLabels trial = eta;
            auto w = route_via_hops(x, y, nb, trial);
            if (w && (!found || w->size() < best.size())) {
                best = *w;
                found = true;
            }
        }
        if (!found) return std::nullopt;
        apply_word_to_box(labels, x, y, best);
        if (!append(best, 0)) return std::nullopt;
    }

    // Stage 2: make the step into x admissible, if it is not already.
    {
        Label need = (x - cur).y == 0 ? Label::V : Label::H;
        if (labels.get(cur - x) != need) {
            auto w = flip_label_excursion(x, cur, labels, budget[1]);
            if (!w) return std::nullopt;
            if (!append(*w, 1)) return std::nullopt;
            if (labels.get(cur - x) != need) return std::nullopt;
        } else {
            out.stage_len[1] = 0;
        }
    }

    // Stage 3: the single visit to x.
    {
        Word w{x};
        apply_word_to_box(labels, x, cur, w);
        if (!append(w, 2)) return std::nullopt;
    }

    // Stage 4: leave x; horizontal if its label reads V, vertical if H.
    {
        Vertex to = labels.get(origin) == Label::V ? x + Vertex{1, 0}
                                                   : x + Vertex{0, 1};
        Word w{to};
        apply_word_to_box(labels, x, cur, w);
        if (!append(w, 3)) return std::nullopt;
    }

    // Stage 5: route back to y.
    {
        auto w = route_via_hops(x, cur, y, labels);
        if (!w) return std::nullopt;
        if (!append(*w, 4)) return std::nullopt;
    }

    // Stage 6: restore the label at y.
    {
        if (labels.get(y - x) != y_label) {
            auto w = flip_label_excursion(x, y, labels, budget[5]);
            if (!w) return std::nullopt;
            if (!append(*w, 5)) return std::nullopt;
        } else {
            out.stage_len[5] = 0;
        }
    }

    // Postconditions of the lemma.
    if (cur != y) return std::nullopt;
    if (labels.get(y - x) != y_label) return std::nullopt;
    if (int(out.word.size()) > 58) return std::nullopt;
    int64_t x_count = 0;
    for (Vertex v : out.word) {
        if (v == x)
            ++x_count;
        else if (!in_A(v, x))
            return std::nullopt;
    }
    if (x_count != 1) return std::nullopt;
    {
        BoxLabels verify = eta;
        Vertex pos = y;
        for (Vertex to : out.word) {
            Vertex d = to - pos;
            bool horizontal = d.y == 0 && (d.x == 1 || d.x == -1);
            bool vertical = d.x == 0 && (d.y == 1 || d.y == -1);
            if (!horizontal && !vertical) return std::nullopt;
            Label l = verify.get(pos - x);
            if ((horizontal && l != Label::V) || (vertical && l != Label::H))
                return std::nullopt;
            verify.set(pos - x, horizontal ? Label::H : Label::V);
            pos = to;
        }
    }
    return out;
}

TauCheck check_tau_terminal(const Word& w, const RotorConfig& rho, Vertex x,
                            int64_t k, int r) {
    TauCheck out;
    if (w.empty()) return out;
    std::unordered_map<Vertex, Label, VertexHash> overlay;
    if (!is_admissible(
            w, origin, [&rho](Vertex v) { return rho.label_at(v); }, overlay))
        return out;
    int64_t origin_count = 0, boundary_count = 0;
    for (Vertex v : w) {
        if (v == origin) ++origin_count;
        if (on_boundary(v, r)) ++boundary_count;
        if (v == x) ++out.x_count;
    }
    Vertex last = w.back();
    bool case_a = last == origin && origin_count == k && boundary_count == 0;
    bool case_b = on_boundary(last, r) && boundary_count == 1 &&
                  origin_count < k;
    out.in_J = case_a || case_b;
    return out;
}

Word phi(const Word& w, const RotorConfig& rho, Vertex x, int64_t k, int r) {
    TauCheck tc = check_tau_terminal(w, rho, x, k, r);
    if (!tc.in_J || tc.x_count < 1)
        throw std::invalid_argument("phi: word is not in J_1(rho, x)");

    int last_d = -1;
    for (int i = 0; i < int(w.size()); ++i)
        if (in_D(w[size_t(i)], x)) last_d = i;
    if (last_d < 0) throw std::logic_error("phi: no D(x) visit in a J_1 word");

    // Evolve labels along the prefix w[0..last_d].
    std::unordered_map<Vertex, Label, VertexHash> overlay;
    Word prefix(w.begin(), w.begin() + last_d + 1);
    if (!is_admissible(prefix, origin,
                       [&rho](Vertex v) { return rho.label_at(v); }, overlay))
        throw std::logic_error("phi: prefix of a J_1 word must be admissible");

    Vertex y = w[size_t(last_d)];
    BoxLabels eta;
    for (int j = -2; j <= 2; ++j) {
        for (int i = -2; i <= 2; ++i) {
            Vertex v{x.x + i, x.y + j};
            auto it = overlay.find(v);
            eta.set(Vertex{i, j},
                    it != overlay.end() ? it->second : rho.label_at(v));
        }
    }

    auto surgery = find_word_lemma2(x, y, eta);
    if (!surgery)
        throw std::logic_error("phi: lemma-2 construction failed");

    Word out;
    out.reserve(w.size() + surgery->word.size());
    out.insert(out.end(), w.begin(), w.begin() + last_d + 1);
    out.insert(out.end(), surgery->word.begin(), surgery->word.end());
    out.insert(out.end(), w.begin() + last_d + 1, w.end());
    return out;
}

namespace {

struct EnumCounts {
    static constexpr int max_depth = 40;
    std::array<uint64_t, max_depth + 1> even{}, odd{}, zero{};
    uint64_t residual = 0;
    uint64_t nodes = 0;
};

struct EnumCore {
    const RotorConfig* rho;
    const FrozenContext* ctx;
    Grid<int8_t> labels;
    Vertex x;
    int64_t k;
    int depth_cap;
    EnumCounts counts;
    const std::function<void(const Word&, int64_t)>* word_fn = nullptr;
    Word path;

    void bucket(int d, int64_t x_count) {
        if (x_count == 0)
            ++counts.zero[size_t(d)];
        else if (x_count % 2 == 0)
            ++counts.even[size_t(d)];
        else
            ++counts.odd[size_t(d)];
        if (word_fn) (*word_fn)(path, x_count);
    }

    void dfs(Vertex pos, int depth, int64_t o_count, int64_t x_count) {
        int8_t l = labels(pos);
        if (l < 0) l = int8_t(rho->label_at(pos));
        Label nl = flip(Label(l));
        labels(pos) = int8_t(nl);
        const Vertex axis = nl == Label::H ? Vertex{1, 0} : Vertex{0, 1};
        for (int sense : {+1, -1}) {
            Vertex to{pos.x + sense * axis.x, pos.y + sense * axis.y};
            ++counts.nodes;
            int d = depth + 1;
            int64_t no = o_count + (to == origin ? 1 : 0);
            int64_t nx = x_count + (to == x ? 1 : 0);
            if (word_fn) path.push_back(to);
            if (to == origin && no == k) {
                bucket(d, nx);
            } else if (ctx->zone(to) == FrozenContext::Boundary) {
                bucket(d, nx);
            } else if (d == depth_cap) {
                ++counts.residual;
            } else {
                dfs(to, d, no, nx);
            }
            if (word_fn) path.pop_back();
        }
        labels(pos) = l;
    }
};

void validate_enum_args(Vertex x, int64_t k, int r, int depth) {
    if (r < 7)
        throw std::invalid_argument("enumerate_parities: r must be >= 7");
    if (!(in_ball(x, r - 3)) || in_ball(x, 3))
        throw std::invalid_argument(
            "enumerate_parities: x must lie in B_{r-3} \\ B_3");
    if (k < 1) throw std::invalid_argument("enumerate_parities: k must be >= 1");
    if (depth < 1 || depth > EnumCounts::max_depth)
        throw std::invalid_argument("enumerate_parities: bad depth cap");
}

}  // namespace

ParityEnumeration enumerate_parities(const RotorConfig& rho, Vertex x,
                                     int64_t k, int r, int depth) {
    validate_enum_args(x, k, r, depth);
    FrozenContext ctx(r);
    EnumCore core{&rho, &ctx, Grid<int8_t>(ctx.half(), int8_t(-1)), x, k,
                  depth};
    core.dfs(origin, 0, 0, 0);

    ParityEnumeration out;
    out.depth = depth;
    out.node_count = core.counts.nodes;

    // Exact dyadic identity: sum over leaves of 2^(L-d) equals 2^L.
    uint64_t total = core.counts.residual;
    for (int d = 1; d <= depth; ++d) {
        uint64_t w = uint64_t(1) << (depth - d);
        total += (core.counts.even[size_t(d)] + core.counts.odd[size_t(d)] +
                  core.counts.zero[size_t(d)]) *
                 w;
    }
    out.mass_exact = total == (uint64_t(1) << depth);

    auto mass = [&](const std::array<uint64_t, EnumCounts::max_depth + 1>& c) {
        long double acc = 0.0L;
        for (int d = depth; d >= 1; --d)
            acc += ldexpl((long double)(c[size_t(d)]), -d);
        return double(acc);
    };
    out.p_even = mass(core.counts.even);
    out.p_odd = mass(core.counts.odd);
    out.p_zero = mass(core.counts.zero);
    out.residual = double(ldexpl((long double)core.counts.residual, -depth));
    return out;
}

void enumerate_terminal_words(
    const RotorConfig& rho, Vertex x, int64_t k, int r, int depth,
    const std::function<void(const Word&, int64_t)>& fn) {
    validate_enum_args(x, k, r, depth);
    FrozenContext ctx(r);
    EnumCore core{&rho, &ctx, Grid<int8_t>(ctx.half(), int8_t(-1)), x, k,
                  depth};
    core.word_fn = &fn;
    core.dfs(origin, 0, 0, 0);
}

ParityMc mc_parity_estimate(const RotorConfig& rho, Vertex x, int64_t k, int r,
                            int64_t trials, uint64_t seed, int threads) {
    const LocalMechanism mech = hv_mechanism(1.0);
    const FrozenContext ctx(r);
    std::vector<uint8_t> outcome(size_t(trials), 0);  // 0 zero, 1 odd, 2 even
    parallel_trials(trials, threads, [&](int64_t i) {
        struct XHook {
            Vertex x;
            int64_t count = 0;
            void on_move(Vertex, Label, Label, Vertex to) {
                if (to == x) ++count;
            }
        } hook{x};
        FrozenParams params;
        params.q = 1.0;
        params.n = 1;
        params.k = k;
        params.r = r;
        params.seed = derive_seed(seed, uint64_t(i));
        params.collect_cells = false;
        run_frozen(ctx, mech, rho, params, hook);
        outcome[size_t(i)] =
            hook.count == 0 ? 0 : (hook.count % 2 == 1 ? 1 : 2);
    });
    ParityMc mc;
    mc.trials = trials;
    for (uint8_t o : outcome) {
        if (o == 0)
            ++mc.zero;
        else if (o == 1)
            ++mc.odd;
        else
            ++mc.even;
    }
    mc.p_even = double(mc.even) / double(trials);
    mc.p_odd = double(mc.odd) / double(trials);
    mc.p_zero = double(mc.zero) / double(trials);
    return mc;
}

}  // namespace hv
