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
#include <compare>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "arena.hpp"

namespace grg {

/// A state of the memory-augmented arena: an arena vertex together with the
/// bitmask of target sets visited so far. Mask updates are deterministic and
/// maximal (moving to v adds every target containing v), so masks only grow
/// along product edges.
struct ProductState {
    int vertex = 0;
    uint64_t mask = 0;

    auto operator<=>(const ProductState&) const = default;
};

/// Positional strategy on the product, for one player.
struct ProductStrategy {
    Player for_player = Player::Eve;
    std::map<ProductState, ProductState> moves;
};

enum class StartMaskMode {
    Seeded, // the start vertex counts as visited (plays include v_0)
    Empty,  // memory starts blank; s only counts if revisited
};

inline uint64_t start_mask(const GameSpec& g, const std::vector<uint64_t>& target_masks,
                           StartMaskMode mode) {
    return mode == StartMaskMode::Seeded ? target_masks[g.start] : 0;
}

namespace detail {
struct ProductStateHash {
    size_t operator()(const ProductState& p) const {
        uint64_t x = p.mask * 0x9e3779b97f4a7c15ULL ^ static_cast<uint64_t>(p.vertex);
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        return static_cast<size_t>(x);
    }
};
} // namespace detail

/// The product arena restricted to states forward-reachable from the start.
/// Index 0 is the start state; `arena` uses product-state indices.
struct ReachableProduct {
    Arena arena;
    std::vector<ProductState> states;
    std::unordered_map<ProductState, int, detail::ProductStateHash> index_of;
    uint64_t full_mask = 0;

    int state_count() const { return static_cast<int>(states.size()); }

    int index(const ProductState& p) const {
        auto it = index_of.find(p);
        return it == index_of.end() ? -1 : it->second;
    }
};

/// Forward exploration with the deterministic maximal mask update. Throws
/// TooManyTargets past the mask width and MemoryBudget when the explored
/// state count would exceed `memory_mb`.
inline ReachableProduct build_reachable_product(const GameSpec& g, StartMaskMode mode,
                                                size_t memory_mb) {
    const int k = g.target_count();
    if (k > 63) throw TooManyTargets("instance has " + std::to_string(k) + " target sets");
    const auto tmask = g.target_masks();

    // rough per-state footprint: state record, hash slot, successor ids
    const size_t budget_states = memory_mb * 1024 * 1024 / 96;

    ReachableProduct prod;
    prod.full_mask = k == 64 ? ~uint64_t{0} : (uint64_t{1} << k) - 1;

    auto intern = [&](ProductState p) {
        auto [it, fresh] = prod.index_of.try_emplace(p, prod.state_count());
        if (fresh) {
            if (prod.states.size() >= budget_states)
                throw MemoryBudget("product exploration exceeds " + std::to_string(memory_mb) +
                                   " MB");
            prod.states.push_back(p);
        }
        return it->second;
    };

    intern(ProductState{g.start, start_mask(g, tmask, mode)});
    for (int i = 0; i < prod.state_count(); ++i) {
        ProductState p = prod.states[i]; // copy: states may reallocate
        prod.arena.owner.push_back(g.arena.owner[p.vertex]);
        prod.arena.successors.emplace_back();
        auto& succ = prod.arena.successors.back();
        for (int w : g.arena.successors[p.vertex])
            succ.push_back(intern(ProductState{w, p.mask | tmask[w]}));
    }
    return prod;
}

/// The full product over all 2^k masks of the large sets only, used by the
/// FPT solver. State (v, S) has index S*n + v.
struct FullProduct {
    Arena arena;
    int base_n = 0;
    int set_count = 0;

    int index(int vertex, uint64_t mask) const {
        return static_cast<int>(mask) * base_n + vertex;
    }
    int vertex_of(int idx) const { return idx % base_n; }
    uint64_t mask_of(int idx) const { return static_cast<uint64_t>(idx / base_n); }
    uint64_t full_mask() const { return (uint64_t{1} << set_count) - 1; }
    long long state_count() const { return static_cast<long long>(base_n) << set_count; }
};

inline FullProduct build_full_product(const Arena& base, const std::vector<uint64_t>& vertex_mask,
                                      int set_count, size_t memory_mb) {
    if (set_count > 30) throw TooManyTargets("2^" + std::to_string(set_count) + " masks");
    FullProduct prod;
    prod.base_n = base.vertex_count();
    prod.set_count = set_count;
    const long long states = prod.state_count();
    const long long edges = base.edge_count() << set_count;
    const long long bytes = states * 48 + edges * 8;
    if (bytes > static_cast<long long>(memory_mb) * 1024 * 1024)
        throw MemoryBudget("product of " + std::to_string(states) + " states exceeds " +
                           std::to_string(memory_mb) + " MB");

    prod.arena.owner.resize(states);
    prod.arena.successors.resize(states);
    const uint64_t masks = uint64_t{1} << set_count;
    for (uint64_t S = 0; S < masks; ++S) {
        for (int v = 0; v < prod.base_n; ++v) {
            int idx = prod.index(v, S);
            prod.arena.owner[idx] = base.owner[v];
            auto& succ = prod.arena.successors[idx];
            succ.reserve(base.successors[v].size());
            for (int w : base.successors[v]) succ.push_back(prod.index(w, S | vertex_mask[w]));
        }
    }
    return prod;
}

} // namespace grg
