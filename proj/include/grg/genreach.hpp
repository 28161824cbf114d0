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
#include <optional>
#include <variant>
#include <vector>

#include "arena.hpp"
#include "attractor.hpp"
#include "product.hpp"

namespace grg {

// ---------------------------------------------------------------------------
// Certificates

/// Zero target sets: every play wins for Eve.
struct VacuousWin {};

/// Winning order for the chain solvers: singleton targets (indices into T) in
/// visiting order. `f0_detour_after` counts the singletons visited before the
/// detour into the large set; -1 when there is no large set.
struct ChainOrder {
    std::vector<int> visit_order;
    int f0_detour_after = -1;
};

/// Two singleton-target attractors that are incomparable under inclusion,
/// certified by one vertex from each difference.
struct IncomparabilityWitness {
    int target_i = -1, target_j = -1;
    int only_in_i = -1, only_in_j = -1;
};

/// Which chain condition failed on an Adam win.
struct FailedCondition {
    enum Kind {
        StartOutsideMinimalAttractor,
        NoChainInsertion,
        StartOutsideProductRegion,
    } kind;
    int target = -1;
};

/// A play of the form prefix (cycle)^omega; the knot is cycle.front().
struct Lasso {
    std::vector<int> prefix;
    std::vector<int> cycle;
    int avoided_target = -1;
};

using Certificate = std::variant<std::monostate, VacuousWin, ChainOrder, IncomparabilityWitness,
                                 FailedCondition, Lasso, ProductStrategy>;

struct SolveOutcome {
    Player winner = Player::Adam;
    Certificate certificate;
    long long product_states = 0;
    const char* algo = "";
};

enum class SolveAlgo { Auto, Product, Chain, OneLarge, Fpt, Adam };

struct SolveOptions {
    SolveAlgo algo = SolveAlgo::Auto;
    StartMaskMode start_mask = StartMaskMode::Seeded;
    int fpt_cutoff = 20;
    size_t memory_mb = 1024;
};

// ---------------------------------------------------------------------------
// Chain analysis shared by the singleton and one-large solvers

namespace detail {

struct ChainAnalysis {
    std::vector<AttractorResult> attr; // per singleton index
    PreorderCheck pre;
    // groups of attractor-equal targets, in visiting order (smallest
    // attractor first); members hold singleton indices sorted ascending
    std::vector<std::vector<int>> visit_groups;

    bool total() const { return pre.total; }
};

inline ChainAnalysis analyze_singleton_chain(const GameSpec& g) {
    ChainAnalysis c;
    std::vector<std::vector<int>> sets;
    for (int t : g.singletons) {
        c.attr.push_back(attractor(g.arena, std::vector<int>{t}));
        sets.push_back(c.attr.back().members);
    }
    c.pre = check_total_preorder(sets, g.arena.vertex_count());
    if (!c.pre.total) return c;

    // pre.order is largest-first; visiting goes smallest-first
    const size_t k = c.pre.order.size();
    for (size_t idx = 0; idx < k; ++idx) {
        size_t pos = k - 1 - idx;
        if (idx == 0 || c.pre.group[pos] != c.pre.group[pos + 1]) c.visit_groups.emplace_back();
        c.visit_groups.back().push_back(c.pre.order[pos]);
    }
    for (auto& grp : c.visit_groups) std::sort(grp.begin(), grp.end());
    return c;
}

inline SolveOutcome adam_wins_chain(const ChainAnalysis& c) {
    SolveOutcome out;
    out.winner = Player::Adam;
    out.certificate = IncomparabilityWitness{c.pre.incomparable_i, c.pre.incomparable_j,
                                             c.pre.witness_in_i, c.pre.witness_in_j};
    return out;
}

inline std::vector<int> flatten_visit_order(const std::vector<std::vector<int>>& groups) {
    std::vector<int> order;
    for (const auto& grp : groups) order.insert(order.end(), grp.begin(), grp.end());
    return order;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Solvers

/// All-singleton instances: Eve wins iff the target attractors form a total
/// preorder under inclusion and the start lies in the minimal one.
inline SolveOutcome solve_singleton_chain(const GameSpec& g) {
    if (!g.large_sets.empty())
        throw WrongClass("solve_singleton_chain requires an instance without large sets");
    SolveOutcome out;
    out.algo = "chain";
    if (g.singletons.empty()) {
        out.winner = Player::Eve;
        out.certificate = VacuousWin{};
        return out;
    }
    auto c = detail::analyze_singleton_chain(g);
    if (!c.total()) {
        out = detail::adam_wins_chain(c);
        out.algo = "chain";
        return out;
    }
    int first = c.visit_groups.front().front();
    if (!c.attr[first].contains(g.start)) {
        out.winner = Player::Adam;
        out.certificate =
            FailedCondition{FailedCondition::StartOutsideMinimalAttractor, first};
        return out;
    }
    out.winner = Player::Eve;
    out.certificate = ChainOrder{detail::flatten_visit_order(c.visit_groups), -1};
    return out;
}

/// One large set F0 plus singletons. On top of the chain conditions, Eve
/// needs a point in the visiting order from which she can detour into F0
/// while staying inside the attractor of the next singleton.
inline SolveOutcome solve_one_large(const GameSpec& g) {
    if (g.large_sets.size() != 1)
        throw WrongClass("solve_one_large requires exactly one large set");
    SolveOutcome out;
    out.algo = "one-large";
    const auto& f0 = g.large_sets[0];

    auto intersect_f0 = [&](const AttractorResult* bound) {
        std::vector<int> seed;
        for (int v : f0)
            if (!bound || bound->contains(v)) seed.push_back(v);
        return seed;
    };

    if (g.singletons.empty()) {
        auto reach = attractor(g.arena, intersect_f0(nullptr));
        if (reach.contains(g.start)) {
            out.winner = Player::Eve;
            out.certificate = ChainOrder{{}, 0};
        } else {
            out.winner = Player::Adam;
            out.certificate = FailedCondition{FailedCondition::NoChainInsertion};
        }
        return out;
    }

    auto c = detail::analyze_singleton_chain(g);
    if (!c.total()) return detail::adam_wins_chain(c);
    int first = c.visit_groups.front().front();
    if (!c.attr[first].contains(g.start)) {
        out.winner = Player::Adam;
        out.certificate =
            FailedCondition{FailedCondition::StartOutsideMinimalAttractor, first};
        return out;
    }

    const int gc = static_cast<int>(c.visit_groups.size());
    // detour_reach[r]: attractor of (attractor of group r) ∩ F0; the final
    // entry uses the whole vertex set as the bound
    std::vector<AttractorResult> detour_reach;
    for (int r = 0; r < gc; ++r)
        detour_reach.push_back(
            attractor(g.arena, intersect_f0(&c.attr[c.visit_groups[r].front()])));
    AttractorResult detour_any = attractor(g.arena, intersect_f0(nullptr));

    auto win_with = [&](int group, int exit_member) {
        // exit_member is visited last within its group, detour follows it;
        // group -1 means the detour happens immediately from the start
        std::vector<int> order;
        int visited_before = 0;
        for (int r = 0; r < gc; ++r) {
            for (int m : c.visit_groups[r])
                if (m != exit_member) order.push_back(m);
            if (r == group) order.push_back(exit_member);
            if (r <= group) visited_before = static_cast<int>(order.size());
        }
        out.winner = Player::Eve;
        out.certificate = ChainOrder{std::move(order), group < 0 ? 0 : visited_before};
        return out;
    };

    if (detour_reach[0].contains(g.start)) return win_with(-1, -1);
    for (int r = 0; r < gc; ++r) {
        const AttractorResult& reach = r + 1 < gc ? detour_reach[r + 1] : detour_any;
        for (int m : c.visit_groups[r])
            if (reach.contains(g.singletons[m])) return win_with(r, m);
    }
    out.winner = Player::Adam;
    out.certificate = FailedCondition{FailedCondition::NoChainInsertion};
    return out;
}

/// Product solver over V x 2^[k], k = number of large sets. Runs the plain
/// singleton chain first (a necessary condition), then computes the staged
/// attractor recursion over the full product, visiting the singletons in
/// chain order with attractor-equal targets collapsed to one representative.
inline SolveOutcome solve_fpt(const GameSpec& g, const SolveOptions& opts = {}) {
    SolveOutcome out;
    out.algo = "fpt";

    GameSpec singles;
    singles.arena = g.arena;
    singles.start = g.start;
    singles.singletons = g.singletons;
    SolveOutcome chain = solve_singleton_chain(singles);
    if (chain.winner == Player::Adam || g.large_sets.empty()) {
        chain.algo = "fpt";
        return chain;
    }

    const int k = static_cast<int>(g.large_sets.size());
    std::vector<uint64_t> fmask(g.arena.vertex_count(), 0);
    for (int j = 0; j < k; ++j)
        for (int v : g.large_sets[j]) fmask[v] |= uint64_t{1} << j;

    FullProduct prod = build_full_product(g.arena, fmask, k, opts.memory_mb);
    out.product_states = prod.state_count();

    // collapsed visiting order: one representative per tie group
    std::vector<int> reps;
    std::vector<std::vector<int>> groups;
    if (!g.singletons.empty()) {
        auto c = detail::analyze_singleton_chain(g);
        groups = c.visit_groups;
        for (const auto& grp : groups) reps.push_back(grp.front());
    }

    const uint64_t full = prod.full_mask();
    std::vector<int> frontier;
    for (int v = 0; v < prod.base_n; ++v) frontier.push_back(prod.index(v, full));
    for (size_t stage = reps.size(); stage-- > 0;) {
        AttractorResult att = attractor(prod.arena, frontier);
        frontier.clear();
        int t = g.singletons[reps[stage]];
        for (uint64_t S = 0; S <= full; ++S)
            if (att.in[prod.index(t, S)]) frontier.push_back(prod.index(t, S));
    }
    AttractorResult final_att = attractor(prod.arena, frontier);

    uint64_t mask0 = opts.start_mask == StartMaskMode::Seeded ? fmask[g.start] : 0;
    if (final_att.in[prod.index(g.start, mask0)]) {
        out.winner = Player::Eve;
        out.certificate = ChainOrder{detail::flatten_visit_order(groups), -1};
    } else {
        out.winner = Player::Adam;
        out.certificate = FailedCondition{FailedCondition::StartOutsideProductRegion};
    }
    return out;
}

/// Baseline product solver: Eve wins iff she can force the reachable product
/// play into a full-mask state. The certificate is a positional product
/// strategy for the winner.
inline SolveOutcome solve_general(const GameSpec& g, const SolveOptions& opts = {}) {
    SolveOutcome out;
    out.algo = "product";
    if (g.target_count() == 0) {
        out.winner = Player::Eve;
        out.certificate = VacuousWin{};
        return out;
    }

    ReachableProduct prod = build_reachable_product(g, opts.start_mask, opts.memory_mb);
    out.product_states = prod.state_count();

    std::vector<int> seed;
    for (int i = 0; i < prod.state_count(); ++i)
        if (prod.states[i].mask == prod.full_mask) seed.push_back(i);
    AttractorResult att = attractor(prod.arena, seed);

    const bool eve_wins = att.in[0] != 0;
    out.winner = eve_wins ? Player::Eve : Player::Adam;

    ProductStrategy strat;
    strat.for_player = out.winner;
    auto smallest_succ = [&](int i, auto&& keep) {
        int best = -1;
        for (int w : prod.arena.successors[i])
            if (keep(w) && (best == -1 || prod.states[w] < prod.states[best])) best = w;
        return best;
    };
    for (int i = 0; i < prod.state_count(); ++i) {
        if (prod.arena.owner[i] != out.winner) continue;
        int pick;
        if (eve_wins) {
            pick = att.in[i] && att.rank[i] > 0 ? att.move[i]
                                                : smallest_succ(i, [](int) { return true; });
        } else {
            // staying outside the attractor keeps the full mask unreachable
            pick = !att.in[i] ? smallest_succ(i, [&](int w) { return !att.in[w]; }) : -1;
            if (pick == -1) pick = smallest_succ(i, [](int) { return true; });
        }
        strat.moves[prod.states[i]] = prod.states[pick];
    }
    out.certificate = std::move(strat);
    return out;
}

/// Simple-lasso witness that the given target set is avoidable from the
/// start in an all-Adam game: greedy walk through the attractor complement.
inline Lasso lasso_witness(const GameSpec& g, int avoided_target) {
    if (classify(g).profile != PlayerProfile::OnlyAdam)
        throw WrongClass("lasso_witness requires an all-Adam instance");
    if (avoided_target < 0 || avoided_target >= g.target_count())
        throw ValidationError("avoided target index out of range");
    AttractorResult att = attractor(g.arena, g.target_vertices(avoided_target));
    if (att.contains(g.start))
        throw NoWitness("start lies in the attractor of the avoided target set");

    std::vector<int> path;
    std::vector<int> pos_of(g.arena.vertex_count(), -1);
    int cur = g.start;
    for (;;) {
        if (pos_of[cur] != -1) {
            Lasso l;
            l.prefix.assign(path.begin(), path.begin() + pos_of[cur]);
            l.cycle.assign(path.begin() + pos_of[cur], path.end());
            l.avoided_target = avoided_target;
            return l;
        }
        pos_of[cur] = static_cast<int>(path.size());
        path.push_back(cur);
        int next = -1;
        for (int w : g.arena.successors[cur])
            if (!att.contains(w) && (next == -1 || w < next)) next = w;
        // the attractor complement is closed under some Adam move
        cur = next;
    }
}

/// One-player case where Adam owns every vertex: Adam wins iff some target
/// set has an attractor missing the start, certified by a lasso that avoids
/// that set.
inline SolveOutcome solve_one_player_adam(const GameSpec& g) {
    if (classify(g).profile != PlayerProfile::OnlyAdam)
        throw WrongClass("solve_one_player_adam requires an all-Adam instance");
    SolveOutcome out;
    out.algo = "adam";
    if (g.target_count() == 0) {
        out.winner = Player::Eve;
        out.certificate = VacuousWin{};
        return out;
    }
    for (int j = 0; j < g.target_count(); ++j) {
        AttractorResult att = attractor(g.arena, g.target_vertices(j));
        if (!att.contains(g.start)) {
            out.winner = Player::Adam;
            out.certificate = lasso_witness(g, j);
            return out;
        }
    }
    out.winner = Player::Eve;
    return out;
}

/// Front-door solver with automatic dispatch.
inline SolveOutcome solve(const GameSpec& g, const SolveOptions& opts = {}) {
    switch (opts.algo) {
        case SolveAlgo::Product: return solve_general(g, opts);
        case SolveAlgo::Chain: return solve_singleton_chain(g);
        case SolveAlgo::OneLarge: return solve_one_large(g);
        case SolveAlgo::Fpt: return solve_fpt(g, opts);
        case SolveAlgo::Adam: return solve_one_player_adam(g);
        case SolveAlgo::Auto: break;
    }
    InstanceClass cls = classify(g);
    if (cls.profile == PlayerProfile::OnlyAdam) return solve_one_player_adam(g);
    if (cls.large_count == 0) return solve_singleton_chain(g);
    if (cls.large_count == 1) return solve_one_large(g);
    if (cls.large_count <= opts.fpt_cutoff) return solve_fpt(g, opts);
    return solve_general(g, opts);
}

} // namespace grg
