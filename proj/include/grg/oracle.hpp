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

// Brute-force ground truth. Everything in here is deliberately naive and
// shares no algorithmic code with the solvers beyond the arena data model,
// so agreement between the two is meaningful evidence.

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "arena.hpp"
#include "inputs.hpp"
#include "product.hpp"

namespace grg {

/// Size limits for the exhaustive procedures. The depth default is
/// (targets+1) * vertices, which is enough for either player to realise the
/// exact value; the oracle refuses larger instances instead of truncating.
struct OracleBudget {
    int max_vertices = 14;
    int max_targets = 6;
    long long max_depth = -1; // -1: (targets+1) * vertices
};

namespace oracle_detail {

struct MaxSearch {
    const Arena* arena;
    std::vector<uint64_t> tmask;
    int total_targets;
    int n;
    // converged entries: depth at or above the per-state sufficiency bound
    std::unordered_map<uint64_t, int> converged;
    std::unordered_map<uint64_t, int> tail;

    long long bound(int popcount) const {
        return static_cast<long long>(total_targets - popcount + 1) * n;
    }

    int run(int v, uint64_t mask, long long depth) {
        const int pc = std::popcount(mask);
        const long long b = bound(pc);
        const bool is_converged = depth >= b;
        if (is_converged) depth = b; // value is depth-independent from here on
        if (depth == 0) return pc;

        uint64_t ckey = (mask * static_cast<uint64_t>(n) + v);
        // tail keys stay below bound(0), so one global stride keeps them apart
        uint64_t tkey =
            ckey * static_cast<uint64_t>(bound(0) + 1) + static_cast<uint64_t>(depth);
        auto& memo = is_converged ? converged : tail;
        uint64_t key = is_converged ? ckey : tkey;
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        const bool maximise = arena->owner[v] == Player::Eve;
        int best = maximise ? -1 : total_targets + 1;
        for (int w : arena->successors[v]) {
            int val = run(w, mask | tmask[w], depth - 1);
            if (maximise ? val > best : val < best) best = val;
        }
        memo.emplace(key, best);
        return best;
    }
};

} // namespace oracle_detail

/// Exact MaxGenReach value by memoised minimax over (vertex, visited-mask,
/// remaining-depth). No attractors anywhere near this.
inline int oracle_max(const GameSpec& g, const OracleBudget& budget = {}) {
    const int n = g.arena.vertex_count();
    const int total = g.target_count();
    if (n > budget.max_vertices)
        throw BudgetExceeded("oracle: " + std::to_string(n) + " vertices over budget");
    if (total > budget.max_targets)
        throw BudgetExceeded("oracle: " + std::to_string(total) + " targets over budget");
    long long depth = budget.max_depth >= 0 ? budget.max_depth
                                            : static_cast<long long>(total + 1) * n;
    if (depth < n) throw BudgetExceeded("oracle: depth bound below vertex count");

    oracle_detail::MaxSearch s;
    s.arena = &g.arena;
    s.tmask = g.target_masks();
    s.total_targets = total;
    s.n = n;
    return s.run(g.start, s.tmask[g.start], depth);
}

inline Player oracle_genreach(const GameSpec& g, const OracleBudget& budget = {}) {
    return oracle_max(g, budget) == g.target_count() ? Player::Eve : Player::Adam;
}

/// Exact MaxGenReachPromise value: plain enumeration of every target subset,
/// no pruning.
inline int oracle_promise(const GameSpec& g, const OracleBudget& budget = {}) {
    const int total = g.target_count();
    if (total > budget.max_targets)
        throw BudgetExceeded("oracle: " + std::to_string(total) + " targets over budget");
    int best = 0;
    for (uint64_t mask = 0; mask < (uint64_t{1} << total); ++mask) {
        int size = std::popcount(mask);
        if (size <= best) continue;
        std::vector<int> keep;
        for (int j = 0; j < total; ++j)
            if (mask >> j & 1) keep.push_back(j);
        if (oracle_genreach(restrict_targets(g, keep), budget) == Player::Eve) best = size;
    }
    return best;
}

/// Truth of a prenex QBF by exhaustive quantifier expansion.
inline bool qbf_eval(const Qbf& q) {
    validate_qbf(q);
    if (q.prefix.size() > 24) throw BudgetExceeded("qbf_eval: more than 24 variables");

    int max_var = 0;
    for (const auto& qv : q.prefix) max_var = std::max(max_var, qv.variable);
    std::vector<char> value(max_var + 1, 0);

    auto matrix = [&]() {
        for (const auto& clause : q.clauses) {
            bool sat = false;
            for (int lit : clause)
                sat |= lit > 0 ? value[lit] != 0 : value[-lit] == 0;
            if (!sat) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, size_t i) -> bool {
        if (i == q.prefix.size()) return matrix();
        const auto& qv = q.prefix[i];
        value[qv.variable] = 1;
        bool with_true = self(self, i + 1);
        if (qv.existential && with_true) return true;
        if (!qv.existential && !with_true) return false;
        value[qv.variable] = 0;
        return self(self, i + 1);
    };
    return rec(rec, 0);
}

/// Exact minimum vertex cover by subset enumeration.
inline int min_vertex_cover(const UndirectedGraph& g) {
    if (g.vertex_count > 20) throw BudgetExceeded("min_vertex_cover: more than 20 vertices");
    int best = g.vertex_count;
    for (uint32_t mask = 0; mask < (uint32_t{1} << g.vertex_count); ++mask) {
        int size = std::popcount(mask);
        if (size >= best) continue;
        bool covers = true;
        for (auto [u, v] : g.edges)
            covers &= ((mask >> u & 1) | (mask >> v & 1)) != 0;
        if (covers) best = size;
    }
    return best;
}

namespace oracle_detail {

/// Residual one-player game left after fixing one player's product strategy:
/// the free player steers among the reachable states, and the play settles
/// in some reachable cycle whose mask is the play's final visit record.
inline std::vector<uint64_t> recurrent_masks(const GameSpec& g, const ProductStrategy& strategy,
                                             StartMaskMode mode) {
    const auto tmask = g.target_masks();
    std::vector<ProductState> states;
    std::unordered_map<uint64_t, int> index;
    auto key = [&](const ProductState& p) {
        return p.mask * static_cast<uint64_t>(g.arena.vertex_count()) +
               static_cast<uint64_t>(p.vertex);
    };
    auto intern = [&](const ProductState& p) {
        auto [it, fresh] = index.try_emplace(key(p), static_cast<int>(states.size()));
        if (fresh) states.push_back(p);
        return it->second;
    };

    Arena graph;
    intern(ProductState{g.start, mode == StartMaskMode::Seeded ? tmask[g.start] : 0});
    for (int i = 0; i < static_cast<int>(states.size()); ++i) {
        ProductState p = states[i];
        graph.owner.push_back(g.arena.owner[p.vertex]);
        graph.successors.emplace_back();
        auto& succ = graph.successors.back();
        if (g.arena.owner[p.vertex] == strategy.for_player) {
            auto it = strategy.moves.find(p);
            if (it == strategy.moves.end())
                throw PartialStrategy("strategy misses reachable state (vertex " +
                                      std::to_string(p.vertex) + ")");
            const ProductState& q = it->second;
            const auto& base = g.arena.successors[p.vertex];
            if (std::find(base.begin(), base.end(), q.vertex) == base.end() ||
                q.mask != (p.mask | tmask[q.vertex]))
                throw PartialStrategy("strategy proposes an illegal move");
            succ.push_back(intern(q));
        } else {
            for (int w : g.arena.successors[p.vertex])
                succ.push_back(intern(ProductState{w, p.mask | tmask[w]}));
        }
    }
    for (auto& succ : graph.successors) {
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }

    SccDag dag = scc_decompose(graph);
    std::vector<uint64_t> masks;
    for (int i = 0; i < static_cast<int>(states.size()); ++i)
        if (component_is_cyclic(graph, dag, dag.component_of[i]))
            masks.push_back(states[i].mask);
    return masks;
}

} // namespace oracle_detail

/// Worst distinct-target count Adam can force against a fixed Eve strategy.
inline int strategy_check(const GameSpec& g, const ProductStrategy& eve_strategy,
                          StartMaskMode mode = StartMaskMode::Seeded) {
    if (eve_strategy.for_player != Player::Eve)
        throw ValidationError("strategy_check expects an Eve strategy");
    int best = g.target_count();
    for (uint64_t mask : oracle_detail::recurrent_masks(g, eve_strategy, mode))
        best = std::min(best, std::popcount(mask));
    return best;
}

/// Best distinct-target count Eve can reach against a fixed Adam strategy.
inline int strategy_check_adam(const GameSpec& g, const ProductStrategy& adam_strategy,
                               StartMaskMode mode = StartMaskMode::Seeded) {
    if (adam_strategy.for_player != Player::Adam)
        throw ValidationError("strategy_check_adam expects an Adam strategy");
    int best = 0;
    for (uint64_t mask : oracle_detail::recurrent_masks(g, adam_strategy, mode))
        best = std::max(best, std::popcount(mask));
    return best;
}

} // namespace grg
