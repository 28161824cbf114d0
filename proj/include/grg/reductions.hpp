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

#include <string>
#include <unordered_set>
#include <vector>

#include "arena.hpp"
#include "inputs.hpp"
#include "rng.hpp"

namespace grg {

/// Bookkeeping attached to a reduction output: human-readable vertex labels
/// and the vertex count the construction is expected to produce.
struct ReductionMeta {
    std::string kind;
    std::vector<std::string> labels;
    long long expected_vertices = 0;
};

struct ReducedGame {
    GameSpec game;
    ReductionMeta meta;
};

namespace detail {

/// Shared builder for the formula games: one chooser vertex per variable
/// feeding its two literal vertices, literals feeding the next chooser, and
/// an absorbing sink after the last variable. Clause j becomes target set j
/// over its literal vertices.
inline ReducedGame build_formula_game(int variables, const std::vector<Player>& chooser_owner,
                                      const std::vector<std::vector<int>>& clauses,
                                      const char* kind) {
    ReducedGame out;
    out.meta.kind = kind;
    const int n = 3 * variables + 1;
    const int sink = 3 * variables;
    out.meta.expected_vertices = n;

    GameSpec& g = out.game;
    g.arena.owner.resize(n);
    g.arena.successors.resize(n);
    out.meta.labels.resize(n);
    for (int i = 0; i < variables; ++i) {
        const int chooser = 3 * i, pos = 3 * i + 1, neg = 3 * i + 2;
        const int next = i + 1 < variables ? 3 * (i + 1) : sink;
        g.arena.owner[chooser] = chooser_owner[i];
        g.arena.successors[chooser] = {pos, neg};
        // single-successor vertices: ownership is irrelevant, keep the
        // quantifier's player
        g.arena.owner[pos] = g.arena.owner[neg] = chooser_owner[i];
        g.arena.successors[pos] = {next};
        g.arena.successors[neg] = {next};
        std::string name = "x" + std::to_string(i + 1);
        out.meta.labels[chooser] = "q" + std::to_string(i + 1);
        out.meta.labels[pos] = name;
        out.meta.labels[neg] = "!" + name;
    }
    g.arena.owner[sink] = Player::Eve;
    g.arena.successors[sink] = {sink};
    out.meta.labels[sink] = "sink";
    g.start = variables > 0 ? 0 : sink;

    for (const auto& clause : clauses) {
        std::vector<int> set;
        for (int lit : clause) {
            int v = lit < 0 ? -lit : lit;
            int vertex = 3 * (v - 1) + (lit > 0 ? 1 : 2);
            if (std::find(set.begin(), set.end(), vertex) == set.end()) set.push_back(vertex);
        }
        if (set.size() == 1) {
            if (std::find(g.singletons.begin(), g.singletons.end(), set[0]) ==
                g.singletons.end())
                g.singletons.push_back(set[0]);
        } else {
            g.large_sets.push_back(std::move(set));
        }
    }
    validate_game(g);
    return out;
}

} // namespace detail

/// QBF game: choosers of universally quantified variables go to Adam,
/// existential ones to Eve; Eve wins the game exactly when the formula is
/// true. 3*vars+1 vertices.
inline ReducedGame qbf_to_game(const Qbf& q) {
    validate_qbf(q);
    int max_var = 0;
    for (const auto& qv : q.prefix) max_var = std::max(max_var, qv.variable);
    std::vector<Player> owner(max_var, Player::Eve);
    for (const auto& qv : q.prefix)
        owner[qv.variable - 1] = qv.existential ? Player::Eve : Player::Adam;

    // game vertices follow prefix order, so remap variables accordingly
    std::vector<int> position(max_var + 1, 0);
    std::vector<Player> chooser_owner;
    for (size_t i = 0; i < q.prefix.size(); ++i) {
        position[q.prefix[i].variable] = static_cast<int>(i) + 1;
        chooser_owner.push_back(owner[q.prefix[i].variable - 1]);
    }
    std::vector<std::vector<int>> clauses;
    for (const auto& c : q.clauses) {
        std::vector<int> mapped;
        for (int lit : c)
            mapped.push_back(lit < 0 ? -position[-lit] : position[lit]);
        clauses.push_back(std::move(mapped));
    }
    return detail::build_formula_game(static_cast<int>(q.prefix.size()), chooser_owner, clauses,
                                      "qbf");
}

/// CNF game: the QBF structure with every chooser handed to one player. With
/// Eve the value equals the MAX-SAT optimum, with Adam the MIN-SAT optimum.
inline ReducedGame cnf_to_game(const Cnf& f, Player owner) {
    for (const auto& c : f.clauses) {
        if (c.empty()) throw ValidationError("empty clause");
        for (int lit : c)
            if (lit == 0 || std::abs(lit) > f.variable_count)
                throw ValidationError("literal out of range");
    }
    std::vector<Player> chooser_owner(f.variable_count, owner);
    return detail::build_formula_game(f.variable_count, chooser_owner, f.clauses, "cnf");
}

/// Layered all-Adam game for s-t reachability: copies (v,i) of H for rounds
/// 1..n+1, edges advancing one round, every non-sink copy may bail out to
/// the only target, and the sink's copies may escape to an absorbing safe
/// vertex. Adam wins iff sink is reachable from source in H.
inline ReducedGame streach_to_game(const Digraph& h, int source, int sink) {
    const int nh = h.vertex_count;
    if (source < 0 || source >= nh || sink < 0 || sink >= nh)
        throw ValidationError("source or sink out of range");
    ReducedGame out;
    out.meta.kind = "st-reach";
    const int rounds = nh + 1;
    const int top = nh * rounds;     // absorbing safe vertex
    const int bottom = top + 1;      // the single target
    const int n = nh * rounds + 2;
    out.meta.expected_vertices = n;

    GameSpec& g = out.game;
    g.arena.owner.assign(n, Player::Adam);
    g.arena.successors.resize(n);
    out.meta.labels.resize(n);
    auto id = [&](int v, int round) { return round * nh + v; }; // round 0-based

    for (int r = 0; r < rounds; ++r) {
        for (int v = 0; v < nh; ++v) {
            out.meta.labels[id(v, r)] =
                "v" + std::to_string(v + 1) + "r" + std::to_string(r + 1);
            if (v == sink)
                g.arena.successors[id(v, r)].push_back(top);
            else
                g.arena.successors[id(v, r)].push_back(bottom);
        }
    }
    for (auto [u, v] : h.edges) {
        for (int r = 0; r + 1 < rounds; ++r) {
            auto& succ = g.arena.successors[id(u, r)];
            int w = id(v, r + 1);
            if (std::find(succ.begin(), succ.end(), w) == succ.end()) succ.push_back(w);
        }
    }
    g.arena.successors[top] = {top};
    g.arena.successors[bottom] = {bottom};
    out.meta.labels[top] = "top";
    out.meta.labels[bottom] = "bottom";
    g.start = id(source, 0);
    g.singletons = {bottom};
    validate_game(g);
    return out;
}

/// Vertex-cover game: Eve picks edges of G round-robin, Adam answers with an
/// endpoint. The game value equals the minimum vertex cover size.
inline ReducedGame vertex_cover_to_game(const UndirectedGraph& gr) {
    if (gr.edges.empty()) throw ValidationError("vertex cover reduction needs at least one edge");
    ReducedGame out;
    out.meta.kind = "vertex-cover";
    const int nv = gr.vertex_count;
    const int n = nv + static_cast<int>(gr.edges.size());
    out.meta.expected_vertices = n;

    auto edges = gr.edges;
    for (auto& [a, b] : edges)
        if (a > b) std::swap(a, b);
    std::sort(edges.begin(), edges.end());

    GameSpec& g = out.game;
    g.arena.owner.resize(n);
    g.arena.successors.resize(n);
    out.meta.labels.resize(n);
    for (int v = 0; v < nv; ++v) {
        g.arena.owner[v] = Player::Eve;
        out.meta.labels[v] = "v" + std::to_string(v + 1);
        for (size_t e = 0; e < edges.size(); ++e)
            g.arena.successors[v].push_back(nv + static_cast<int>(e));
        g.singletons.push_back(v);
    }
    for (size_t e = 0; e < edges.size(); ++e) {
        int idx = nv + static_cast<int>(e);
        g.arena.owner[idx] = Player::Adam;
        auto [a, b] = edges[e];
        g.arena.successors[idx].push_back(a);
        if (b != a) g.arena.successors[idx].push_back(b);
        out.meta.labels[idx] =
            "e" + std::to_string(a + 1) + "_" + std::to_string(b + 1);
    }
    g.start = nv; // lexicographically smallest edge
    validate_game(g);
    return out;
}

struct RandomGameParams {
    int vertices = 0;
    long long edges = 0;
    int singleton_count = 0;
    int large_count = 0;
    int large_size = 2;
    uint64_t seed = 0;
    PlayerProfile profile = PlayerProfile::TwoPlayer;
};

/// Seeded random instance: every vertex gets one successor first, remaining
/// edges are drawn without duplicates, targets are sampled without
/// replacement. Identical parameters give identical games.
inline GameSpec random_game(const RandomGameParams& p) {
    const int n = p.vertices;
    const long long max_edges = static_cast<long long>(n) * n;
    if (n < 1) throw InfeasibleParams("need at least one vertex");
    if (p.edges < n || p.edges > max_edges)
        throw InfeasibleParams("edge count must lie in [vertices, vertices^2]");
    if (p.singleton_count < 0 || p.singleton_count > n)
        throw InfeasibleParams("cannot sample that many distinct singleton targets");
    if (p.large_count < 0 || (p.large_count > 0 && (p.large_size < 2 || p.large_size > n)))
        throw InfeasibleParams("large sets need size in [2, vertices]");

    Rng rng(p.seed);
    GameSpec g;
    g.arena.owner.resize(n);
    g.arena.successors.resize(n);
    for (int v = 0; v < n; ++v) {
        switch (p.profile) {
            case PlayerProfile::OnlyEve: g.arena.owner[v] = Player::Eve; break;
            case PlayerProfile::OnlyAdam: g.arena.owner[v] = Player::Adam; break;
            case PlayerProfile::TwoPlayer:
                g.arena.owner[v] = rng.chance(1, 2) ? Player::Eve : Player::Adam;
                break;
        }
    }

    std::unordered_set<long long> present;
    auto key = [n](int u, int w) { return static_cast<long long>(u) * n + w; };
    long long placed = 0;
    for (int v = 0; v < n; ++v) {
        int w = rng.below_int(n);
        g.arena.successors[v].push_back(w);
        present.insert(key(v, w));
        ++placed;
    }
    if (max_edges <= 4'000'000) {
        // dense request: draw the remaining edges from the explicit free list
        std::vector<std::pair<int, int>> free;
        for (int u = 0; u < n; ++u)
            for (int w = 0; w < n; ++w)
                if (!present.contains(key(u, w))) free.emplace_back(u, w);
        rng.shuffle(free);
        for (size_t i = 0; placed < p.edges; ++i, ++placed) {
            auto [u, w] = free[i];
            g.arena.successors[u].push_back(w);
        }
    } else {
        while (placed < p.edges) {
            int u = rng.below_int(n), w = rng.below_int(n);
            if (!present.insert(key(u, w)).second) continue;
            g.arena.successors[u].push_back(w);
            ++placed;
        }
    }
    for (auto& succ : g.arena.successors) std::sort(succ.begin(), succ.end());

    g.start = rng.below_int(n);
    g.singletons = rng.sample_distinct(n, p.singleton_count);
    for (int j = 0; j < p.large_count; ++j)
        g.large_sets.push_back(rng.sample_distinct(n, p.large_size));

    validate_game(g);
    return g;
}

} // namespace grg
