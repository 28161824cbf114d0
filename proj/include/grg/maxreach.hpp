/*
 * Copyright 2026 The grg authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <bit>
#include <deque>
#include <limits>
#include <map>
#include <variant>
#include <vector>

#include "arena.hpp"
#include "attractor.hpp"
#include "genreach.hpp"
#include "product.hpp"

namespace grg {

// ---------------------------------------------------------------------------
// Witnesses

/// Target subset Eve can pledge and then visit entirely (global indices).
struct PromisedSubset {
    std::vector<int> targets;
};

/// Path in the SCC DAG realising the value as a weight sum.
struct SccPath {
    std::vector<int> components;
    std::vector<int> weights;
};

/// Lasso play together with the number of distinct target sets it visits.
struct LassoValue {
    Lasso lasso;
    int distinct_targets = 0;
};

/// Per-product-state game value (max distinct target sets forcible).
struct ProductValueMap {
    std::map<ProductState, int> value;
};

using ValueWitness =
    std::variant<std::monostate, PromisedSubset, SccPath, LassoValue, ProductValueMap>;

struct ValueResult {
    int value = 0;
    ValueWitness witness;
    long long product_states = 0;
    const char* algo = "";
};

struct ValueOptions {
    StartMaskMode start_mask = StartMaskMode::Seeded;
    size_t memory_mb = 1024;
};

// ---------------------------------------------------------------------------
// General two-player optimisation over the product

/// Layered product-value computation: masks only grow, so "Eve can force at
/// least v distinct sets" is plain attraction to the states whose mask has
/// popcount >= v, evaluated from the highest layer downward.
inline ValueResult max_value_general(const GameSpec& g, const ValueOptions& opts = {}) {
    ValueResult out;
    out.algo = "max-product";
    const int total = g.target_count();
    if (total == 0) return out;

    ReachableProduct prod = build_reachable_product(g, opts.start_mask, opts.memory_mb);
    out.product_states = prod.state_count();

    std::vector<int> value(prod.state_count(), -1);
    for (int v = total; v >= 1; --v) {
        std::vector<int> seed;
        for (int i = 0; i < prod.state_count(); ++i)
            if (std::popcount(prod.states[i].mask) >= v) seed.push_back(i);
        AttractorResult att = attractor(prod.arena, seed);
        for (int i = 0; i < prod.state_count(); ++i)
            if (att.in[i] && value[i] == -1) value[i] = v;
    }

    ProductValueMap map;
    for (int i = 0; i < prod.state_count(); ++i) {
        if (value[i] == -1) value[i] = 0;
        map.value[prod.states[i]] = value[i];
    }
    out.value = value[0];
    out.witness = std::move(map);
    return out;
}

// ---------------------------------------------------------------------------
// One-player specialists

/// Eve alone, singleton targets: maximum-weight path in the SCC DAG, where a
/// component weighs as many target vertices as it contains.
inline ValueResult max_value_eve_scc(const GameSpec& g) {
    InstanceClass cls = classify(g);
    if (cls.profile != PlayerProfile::OnlyEve || !g.large_sets.empty())
        throw WrongClass("max_value_eve_scc requires an all-Eve instance with singleton targets");
    ValueResult out;
    out.algo = "max-scc";

    SccDag dag = scc_decompose(g.arena);
    std::vector<int> weight(dag.component_count(), 0);
    for (int t : g.singletons) ++weight[dag.component_of[t]];

    // components come sinks-first, so successors are already evaluated
    std::vector<int> best(dag.component_count(), 0), pick(dag.component_count(), -1);
    for (int c = 0; c < dag.component_count(); ++c) {
        best[c] = weight[c];
        for (int d : dag.dag_edges[c])
            if (best[d] > 0 && weight[c] + best[d] > best[c]) {
                best[c] = weight[c] + best[d];
                pick[c] = d;
            }
    }

    SccPath path;
    for (int c = dag.component_of[g.start]; c != -1; c = pick[c]) {
        path.components.push_back(c);
        path.weights.push_back(weight[c]);
    }
    out.value = best[dag.component_of[g.start]];
    out.witness = std::move(path);
    return out;
}

namespace detail {

struct ZeroOneBfs {
    std::vector<int> dist;
    std::vector<int> parent;
};

/// 0-1 BFS over the arena with edge weight [head is a singleton target].
inline ZeroOneBfs zero_one_bfs(const Arena& a, int source, const std::vector<char>& head_weight) {
    const int inf = std::numeric_limits<int>::max();
    ZeroOneBfs r;
    r.dist.assign(a.vertex_count(), inf);
    r.parent.assign(a.vertex_count(), -1);
    std::deque<int> dq;
    r.dist[source] = 0;
    dq.push_back(source);
    while (!dq.empty()) {
        int v = dq.front();
        dq.pop_front();
        for (int w : a.successors[v]) {
            int nd = r.dist[v] + head_weight[w];
            if (nd < r.dist[w]) {
                r.dist[w] = nd;
                r.parent[w] = v;
                if (head_weight[w])
                    dq.push_back(w);
                else
                    dq.push_front(w);
            }
        }
    }
    return r;
}

inline std::vector<int> bfs_path(const ZeroOneBfs& r, int source, int sink) {
    std::vector<int> path;
    for (int v = sink; v != -1; v = r.parent[v]) {
        path.push_back(v);
        if (v == source) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

inline int count_distinct_targets(const GameSpec& g, const std::vector<int>& prefix,
                                  const std::vector<int>& cycle) {
    auto masks = g.target_masks();
    uint64_t seen = masks[g.start];
    for (int v : prefix) seen |= masks[v];
    for (int v : cycle) seen |= masks[v];
    return std::popcount(seen);
}

} // namespace detail

/// Adam alone, singleton targets: the cheapest s -> t -> t lasso under 0/1
/// edge weights that charge entering a target. The reported value corrects
/// for the start's own membership (edges never charge v_0) and avoids double
/// charging the knot, which the weight sum would count on both walks.
inline ValueResult max_value_adam_lasso(const GameSpec& g) {
    InstanceClass cls = classify(g);
    if (cls.profile != PlayerProfile::OnlyAdam || !g.large_sets.empty())
        throw WrongClass("max_value_adam_lasso requires an all-Adam instance with singleton "
                         "targets");
    ValueResult out;
    out.algo = "max-lasso";
    const int n = g.arena.vertex_count();
    const int inf = std::numeric_limits<int>::max();

    std::vector<char> is_target(n, 0);
    for (int t : g.singletons) is_target[t] = 1;

    auto from_start = detail::zero_one_bfs(g.arena, g.start, is_target);

    // value(t) = [s in T] + d(s,t) + lightest cycle through t - [t in T];
    // the knot correction cancels against the cycle's closing edge weight
    int best = inf, best_knot = -1, best_pred = -1;
    for (int t = 0; t < n; ++t) {
        if (from_start.dist[t] == inf) continue;
        auto from_knot = detail::zero_one_bfs(g.arena, t, is_target);
        for (int u = 0; u < n; ++u) {
            if (from_knot.dist[u] == inf) continue;
            bool closes = false;
            for (int w : g.arena.successors[u]) closes |= (w == t);
            if (!closes) continue;
            int total = (is_target[g.start] ? 1 : 0) + from_start.dist[t] + from_knot.dist[u];
            if (total < best || (total == best && t < best_knot)) {
                best = total;
                best_knot = t;
                best_pred = u;
            }
        }
    }

    LassoValue w;
    auto path = detail::bfs_path(from_start, g.start, best_knot);
    w.lasso.prefix.assign(path.begin(), path.end() - 1);
    auto from_best = detail::zero_one_bfs(g.arena, best_knot, is_target);
    w.lasso.cycle = detail::bfs_path(from_best, best_knot, best_pred);
    w.distinct_targets = detail::count_distinct_targets(g, w.lasso.prefix, w.lasso.cycle);
    out.value = best;
    out.witness = std::move(w);
    return out;
}

/// Adam alone, arbitrary targets: the play settles in some product cycle, so
/// the value is the smallest mask popcount among recurrent reachable states.
inline ValueResult max_value_adam_general(const GameSpec& g, const ValueOptions& opts = {}) {
    if (classify(g).profile != PlayerProfile::OnlyAdam)
        throw WrongClass("max_value_adam_general requires an all-Adam instance");
    ValueResult out;
    out.algo = "max-adam-product";
    if (g.target_count() == 0) return out;

    ReachableProduct prod = build_reachable_product(g, opts.start_mask, opts.memory_mb);
    out.product_states = prod.state_count();
    SccDag dag = scc_decompose(prod.arena);

    int best_state = -1, best_count = std::numeric_limits<int>::max();
    for (int i = 0; i < prod.state_count(); ++i) {
        if (!component_is_cyclic(prod.arena, dag, dag.component_of[i])) continue;
        int c = std::popcount(prod.states[i].mask);
        if (c < best_count || (c == best_count && prod.states[i] < prod.states[best_state])) {
            best_count = c;
            best_state = i;
        }
    }

    LassoValue w;
    w.distinct_targets = best_count;
    {
        // prefix: breadth-first product path from the start to the chosen
        // knot, projected to arena vertices
        std::vector<int> parent(prod.state_count(), -2);
        std::vector<int> queue{0};
        parent[0] = -1;
        for (size_t h = 0; h < queue.size(); ++h)
            for (int s : prod.arena.successors[queue[h]])
                if (parent[s] == -2) {
                    parent[s] = queue[h];
                    queue.push_back(s);
                }
        std::vector<int> path;
        for (int s = best_state; s != -1; s = parent[s]) path.push_back(s);
        std::reverse(path.begin(), path.end());
        for (size_t i = 0; i + 1 < path.size(); ++i)
            w.lasso.prefix.push_back(prod.states[path[i]].vertex);

        // cycle: within the knot's component, back to the knot
        const int comp = dag.component_of[best_state];
        std::vector<int> cparent(prod.state_count(), -2);
        std::vector<int> cqueue{best_state};
        cparent[best_state] = -1;
        int closer = -1;
        for (size_t h = 0; h < cqueue.size() && closer == -1; ++h) {
            for (int s : prod.arena.successors[cqueue[h]]) {
                if (s == best_state) {
                    closer = cqueue[h];
                    break;
                }
                if (dag.component_of[s] == comp && cparent[s] == -2) {
                    cparent[s] = cqueue[h];
                    cqueue.push_back(s);
                }
            }
        }
        std::vector<int> cyc;
        for (int s = closer; s != -1; s = cparent[s]) cyc.push_back(s);
        std::reverse(cyc.begin(), cyc.end());
        for (int s : cyc) w.lasso.cycle.push_back(prod.states[s].vertex);
    }
    out.value = best_count;
    out.witness = std::move(w);
    return out;
}

/// Adam alone, promise variant: Eve can pledge exactly the target sets whose
/// attractor contains the start.
inline ValueResult promise_value_adam(const GameSpec& g) {
    if (classify(g).profile != PlayerProfile::OnlyAdam)
        throw WrongClass("promise_value_adam requires an all-Adam instance");
    ValueResult out;
    out.algo = "promise-adam";
    PromisedSubset subset;
    for (int j = 0; j < g.target_count(); ++j)
        if (attractor(g.arena, g.target_vertices(j)).contains(g.start))
            subset.targets.push_back(j);
    out.value = static_cast<int>(subset.targets.size());
    out.witness = std::move(subset);
    return out;
}

/// The preorder graph over {start} and the singleton targets, with an edge
/// x -> y whenever x lies in the attractor of y.
struct TargetPreorderGraph {
    std::vector<int> node_vertex;  // node id -> arena vertex (node 0 = start)
    std::vector<int> node_target;  // node id -> singleton index, -1 for plain start
    Arena graph;                   // preorder relation as an arena (owners unused)
};

inline TargetPreorderGraph build_target_preorder_graph(const GameSpec& g) {
    TargetPreorderGraph pg;
    pg.node_vertex.push_back(g.start);
    pg.node_target.push_back(-1);
    for (size_t i = 0; i < g.singletons.size(); ++i) {
        if (g.singletons[i] == g.start) {
            pg.node_target[0] = static_cast<int>(i); // start is itself a target
            continue;
        }
        pg.node_vertex.push_back(g.singletons[i]);
        pg.node_target.push_back(static_cast<int>(i));
    }
    const int nodes = static_cast<int>(pg.node_vertex.size());
    std::vector<AttractorResult> attr;
    attr.reserve(nodes);
    for (int j = 0; j < nodes; ++j)
        attr.push_back(attractor(g.arena, std::vector<int>{pg.node_vertex[j]}));
    pg.graph.owner.assign(nodes, Player::Eve);
    pg.graph.successors.assign(nodes, {});
    for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < nodes; ++j)
            if (attr[j].contains(pg.node_vertex[i])) pg.graph.successors[i].push_back(j);
    return pg;
}

/// Two players, singleton targets: SCC decomposition of the preorder graph,
/// weights counting the targets per component, and a maximum-weight DAG path
/// from the start's component.
inline ValueResult promise_value_singleton(const GameSpec& g) {
    if (!g.large_sets.empty())
        throw WrongClass("promise_value_singleton requires singleton targets only");
    ValueResult out;
    out.algo = "promise-preorder";

    TargetPreorderGraph pg = build_target_preorder_graph(g);
    SccDag dag = scc_decompose(pg.graph);
    const int nodes = static_cast<int>(pg.node_vertex.size());

    std::vector<int> weight(dag.component_count(), 0);
    for (int j = 0; j < nodes; ++j)
        if (pg.node_target[j] >= 0) ++weight[dag.component_of[j]];

    std::vector<int> best(dag.component_count(), 0), pick(dag.component_count(), -1);
    for (int c = 0; c < dag.component_count(); ++c) {
        best[c] = weight[c];
        for (int d : dag.dag_edges[c])
            if (best[d] > 0 && weight[c] + best[d] > best[c]) {
                best[c] = weight[c] + best[d];
                pick[c] = d;
            }
    }

    PromisedSubset subset;
    for (int c = dag.component_of[0]; c != -1; c = pick[c])
        for (int j : dag.components[c])
            if (pg.node_target[j] >= 0) subset.targets.push_back(pg.node_target[j]);
    std::sort(subset.targets.begin(), subset.targets.end());
    out.value = best[dag.component_of[0]];
    out.witness = std::move(subset);
    return out;
}

/// General promise problem: enumerate candidate subsets in decreasing
/// cardinality (lexicographic within), pruning by anti-monotonicity: a
/// subset that loses kills all its supersets.
inline ValueResult promise_value_general(const GameSpec& g, const ValueOptions& opts = {}) {
    const int total = g.target_count();
    if (total > 63) throw TooManyTargets("instance has " + std::to_string(total) + " target sets");
    ValueResult out;
    out.algo = "promise-subsets";
    out.witness = PromisedSubset{};
    if (total == 0) return out;

    SolveOptions sopts;
    sopts.start_mask = opts.start_mask;
    sopts.memory_mb = opts.memory_mb;
    auto eve_wins = [&](const std::vector<int>& keep) {
        SolveOutcome r = solve_general(restrict_targets(g, keep), sopts);
        out.product_states = std::max(out.product_states, r.product_states);
        return r.winner == Player::Eve;
    };

    // targets that lose alone lose in every company
    std::vector<int> viable;
    for (int j = 0; j < total; ++j)
        if (eve_wins({j})) viable.push_back(j);

    std::vector<uint64_t> losers;
    for (int size = static_cast<int>(viable.size()); size >= 1; --size) {
        std::vector<int> comb(size);
        for (int i = 0; i < size; ++i) comb[i] = i;
        for (;;) {
            std::vector<int> subset;
            uint64_t mask = 0;
            for (int i : comb) {
                subset.push_back(viable[i]);
                mask |= uint64_t{1} << viable[i];
            }
            bool pruned = false;
            for (uint64_t l : losers)
                if ((mask & l) == l) {
                    pruned = true;
                    break;
                }
            if (!pruned) {
                if (eve_wins(subset)) {
                    out.value = size;
                    out.witness = PromisedSubset{std::move(subset)};
                    return out;
                }
                losers.push_back(mask);
            }
            // next lexicographic combination
            int i = size - 1;
            while (i >= 0 && comb[i] == static_cast<int>(viable.size()) - size + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dispatchers

inline ValueResult max_value(const GameSpec& g, const ValueOptions& opts = {}) {
    InstanceClass cls = classify(g);
    if (cls.profile == PlayerProfile::OnlyEve && g.large_sets.empty())
        return max_value_eve_scc(g);
    if (cls.profile == PlayerProfile::OnlyAdam && g.large_sets.empty())
        return max_value_adam_lasso(g);
    if (cls.profile == PlayerProfile::OnlyAdam) return max_value_adam_general(g, opts);
    return max_value_general(g, opts);
}

inline ValueResult promise_value(const GameSpec& g, const ValueOptions& opts = {}) {
    InstanceClass cls = classify(g);
    if (cls.profile == PlayerProfile::OnlyAdam) return promise_value_adam(g);
    if (g.large_sets.empty()) return promise_value_singleton(g);
    return promise_value_general(g, opts);
}

} // namespace grg
