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

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace grg {

enum class Player : unsigned char { Eve, Adam };

inline Player opponent(Player p) { return p == Player::Eve ? Player::Adam : Player::Eve; }
inline char player_letter(Player p) { return p == Player::Eve ? 'E' : 'A'; }
inline const char* player_name(Player p) { return p == Player::Eve ? "eve" : "adam"; }

/// A finite game arena: directed graph with a total successor relation and a
/// partition of the vertices between the two players. Vertex ids are dense
/// 0..n-1; every vertex has at least one successor so plays never get stuck.
struct Arena {
    std::vector<Player> owner;
    std::vector<std::vector<int>> successors;

    int vertex_count() const { return static_cast<int>(owner.size()); }

    long long edge_count() const {
        long long m = 0;
        for (const auto& s : successors) m += static_cast<long long>(s.size());
        return m;
    }

    bool operator==(const Arena&) const = default;
};

/// Throws ValidationError unless `a` satisfies all Arena invariants.
inline void validate_arena(const Arena& a) {
    const int n = a.vertex_count();
    if (a.successors.size() != static_cast<size_t>(n))
        throw ValidationError("owner/successor tables disagree on vertex count");
    std::vector<char> seen;
    for (int v = 0; v < n; ++v) {
        const auto& succ = a.successors[v];
        if (succ.empty())
            throw ValidationError("vertex " + std::to_string(v) + " has no successor");
        seen.assign(n, 0);
        for (int w : succ) {
            if (w < 0 || w >= n)
                throw ValidationError("vertex " + std::to_string(v) + " has dangling successor " +
                                      std::to_string(w));
            if (seen[w])
                throw ValidationError("vertex " + std::to_string(v) + " lists successor " +
                                      std::to_string(w) + " twice");
            seen[w] = 1;
        }
    }
}

/// A generalised reachability instance: arena, start vertex, the singleton
/// targets T (stored as plain vertex ids) and the large target sets F (size
/// >= 2 each). Targets are indexed globally: 0..|T|-1 are the singletons in
/// order, |T|..|T|+|F|-1 the large sets in order.
struct GameSpec {
    Arena arena;
    int start = 0;
    std::vector<int> singletons;
    std::vector<std::vector<int>> large_sets;

    int target_count() const {
        return static_cast<int>(singletons.size() + large_sets.size());
    }

    bool target_contains(int target, int v) const {
        const int t = static_cast<int>(singletons.size());
        if (target < t) return singletons[target] == v;
        const auto& f = large_sets[target - t];
        return std::find(f.begin(), f.end(), v) != f.end();
    }

    /// Vertex ids of one target set, by global index.
    std::vector<int> target_vertices(int target) const {
        const int t = static_cast<int>(singletons.size());
        if (target < t) return {singletons[target]};
        return large_sets[target - t];
    }

    /// For each vertex, the bitmask of global target indices containing it.
    std::vector<uint64_t> target_masks() const {
        std::vector<uint64_t> mask(arena.vertex_count(), 0);
        for (size_t i = 0; i < singletons.size(); ++i)
            mask[singletons[i]] |= uint64_t{1} << i;
        for (size_t j = 0; j < large_sets.size(); ++j)
            for (int v : large_sets[j])
                mask[v] |= uint64_t{1} << (singletons.size() + j);
        return mask;
    }

    bool operator==(const GameSpec&) const = default;
};

inline void validate_game(const GameSpec& g) {
    validate_arena(g.arena);
    const int n = g.arena.vertex_count();
    if (g.start < 0 || g.start >= n)
        throw ValidationError("start vertex " + std::to_string(g.start) + " out of range");
    std::vector<char> seen(n, 0);
    for (int t : g.singletons) {
        if (t < 0 || t >= n)
            throw ValidationError("singleton target " + std::to_string(t) + " out of range");
        if (seen[t])
            throw ValidationError("duplicate singleton target " + std::to_string(t));
        seen[t] = 1;
    }
    for (const auto& f : g.large_sets) {
        if (f.size() < 2)
            throw ValidationError("large target set of size " + std::to_string(f.size()));
        std::vector<char> in_set(n, 0);
        for (int v : f) {
            if (v < 0 || v >= n)
                throw ValidationError("target vertex " + std::to_string(v) + " out of range");
            if (in_set[v])
                throw ValidationError("duplicate vertex " + std::to_string(v) + " in large set");
            in_set[v] = 1;
        }
    }
}

enum class TargetShape { AllSingleton, OneLarge, FewLarge, General };
enum class PlayerProfile { TwoPlayer, OnlyEve, OnlyAdam };

struct InstanceClass {
    TargetShape shape;
    int large_count;
    PlayerProfile profile;

    bool operator==(const InstanceClass&) const = default;
};

/// Pure classification used for algorithm dispatch. OnlyEve/OnlyAdam hold iff
/// every vertex is owned by that single player, regardless of choice.
inline InstanceClass classify(const GameSpec& g) {
    InstanceClass c{};
    const int k = static_cast<int>(g.large_sets.size());
    c.large_count = k;
    c.shape = k == 0 ? TargetShape::AllSingleton
                     : (k == 1 ? TargetShape::OneLarge : TargetShape::FewLarge);
    bool any_eve = false, any_adam = false;
    for (Player p : g.arena.owner)
        (p == Player::Eve ? any_eve : any_adam) = true;
    if (any_eve && !any_adam)
        c.profile = PlayerProfile::OnlyEve;
    else if (any_adam && !any_eve)
        c.profile = PlayerProfile::OnlyAdam;
    else
        c.profile = PlayerProfile::TwoPlayer;
    return c;
}

/// Same arena and start, but only the targets whose global indices appear in
/// `keep` (order preserved, singletons stay singletons).
inline GameSpec restrict_targets(const GameSpec& g, const std::vector<int>& keep) {
    GameSpec r;
    r.arena = g.arena;
    r.start = g.start;
    const int t = static_cast<int>(g.singletons.size());
    for (int idx : keep) {
        if (idx < t)
            r.singletons.push_back(g.singletons[idx]);
        else
            r.large_sets.push_back(g.large_sets[idx - t]);
    }
    return r;
}

/// SCC decomposition. Components are listed in reverse topological order:
/// every condensation edge goes from a later component index to an earlier
/// one (sinks first).
struct SccDag {
    std::vector<int> component_of;
    std::vector<std::vector<int>> components;
    std::vector<std::vector<int>> dag_edges;

    int component_count() const { return static_cast<int>(components.size()); }
};

/// Iterative Tarjan; emission order is already reverse topological.
inline SccDag scc_decompose(const Arena& a) {
    const int n = a.vertex_count();
    SccDag out;
    out.component_of.assign(n, -1);

    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    stack.reserve(n);
    int next_index = 0;

    struct Frame {
        int v;
        size_t succ_pos;
    };
    std::vector<Frame> call;

    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = a.successors[f.v];
            if (f.succ_pos < succ.size()) {
                int w = succ[f.succ_pos++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        out.component_of[w] = static_cast<int>(out.components.size());
                        comp.push_back(w);
                    } while (w != f.v);
                    std::sort(comp.begin(), comp.end());
                    out.components.push_back(std::move(comp));
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }

    out.dag_edges.assign(out.components.size(), {});
    for (int u = 0; u < n; ++u) {
        for (int w : a.successors[u]) {
            int cu = out.component_of[u], cw = out.component_of[w];
            if (cu != cw) out.dag_edges[cu].push_back(cw);
        }
    }
    for (auto& e : out.dag_edges) {
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
    }
    return out;
}

/// True when the component can host the tail of an infinite play.
inline bool component_is_cyclic(const Arena& a, const SccDag& dag, int comp) {
    const auto& members = dag.components[comp];
    if (members.size() > 1) return true;
    int v = members[0];
    for (int w : a.successors[v])
        if (w == v) return true;
    return false;
}

} // namespace grg
