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
#include <cstdint>
#include <span>
#include <vector>

#include "arena.hpp"

namespace grg {

/// Result of an Eve-attractor computation. `rank[v]` is the least fixpoint
/// round in which v entered the set (0 exactly on the seed set, -1 outside).
/// `move[v]` is defined for Eve-owned members outside the seed and points to
/// a successor of rank `rank[v]-1`; ties break to the smallest vertex id.
struct AttractorResult {
    std::vector<char> in;
    std::vector<int> rank;
    std::vector<int> move;
    std::vector<int> members; // ascending vertex ids

    bool contains(int v) const { return in[v] != 0; }
};

/// Backward counting algorithm: O(|E|). Eve vertices join as soon as one
/// successor is inside, Adam vertices once their outdegree counter drains.
inline AttractorResult attractor(const Arena& a, std::span<const int> seed) {
    const int n = a.vertex_count();
    AttractorResult r;
    r.in.assign(n, 0);
    r.rank.assign(n, -1);
    r.move.assign(n, -1);

    // predecessor lists in CSR form
    std::vector<int> pred_off(n + 1, 0), pred_dat;
    for (int u = 0; u < n; ++u)
        for (int w : a.successors[u]) ++pred_off[w + 1];
    for (int v = 0; v < n; ++v) pred_off[v + 1] += pred_off[v];
    pred_dat.resize(pred_off[n]);
    {
        std::vector<int> cursor(pred_off.begin(), pred_off.end() - 1);
        for (int u = 0; u < n; ++u)
            for (int w : a.successors[u]) pred_dat[cursor[w]++] = u;
    }

    std::vector<int> counter(n, 0);
    for (int v = 0; v < n; ++v)
        if (a.owner[v] == Player::Adam) counter[v] = static_cast<int>(a.successors[v].size());

    std::vector<int> queue;
    queue.reserve(n);
    for (int v : seed) {
        if (v < 0 || v >= n) throw ValidationError("attractor seed vertex out of range");
        if (!r.in[v]) {
            r.in[v] = 1;
            r.rank[v] = 0;
            queue.push_back(v);
        }
    }

    // FIFO keeps ranks nondecreasing, so every vertex gets its least rank
    for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (int p = pred_off[v]; p < pred_off[v + 1]; ++p) {
            int u = pred_dat[p];
            if (r.in[u]) continue;
            if (a.owner[u] == Player::Eve || --counter[u] == 0) {
                r.in[u] = 1;
                r.rank[u] = r.rank[v] + 1;
                queue.push_back(u);
            }
        }
    }

    for (int v = 0; v < n; ++v) {
        if (!r.in[v]) continue;
        r.members.push_back(v);
        if (r.rank[v] == 0 || a.owner[v] != Player::Eve) continue;
        // smallest id among minimal-rank successors; minimal rank is always
        // rank[v]-1 for an Eve member outside the seed
        for (int w : a.successors[v])
            if (r.in[w] && r.rank[w] == r.rank[v] - 1 && (r.move[v] == -1 || w < r.move[v]))
                r.move[v] = w;
    }
    return r;
}

inline AttractorResult attractor(const Arena& a, const std::vector<int>& seed) {
    return attractor(a, std::span<const int>(seed));
}

/// Outcome of testing a family of vertex sets for comparability under
/// inclusion. On success `order` lists indices realising a superset chain
/// (largest first) and `group[i]` numbers runs of equal sets; otherwise a
/// certified incomparable pair is reported with one separating element from
/// each side.
struct PreorderCheck {
    bool total = false;
    std::vector<int> order;
    std::vector<int> group;
    int incomparable_i = -1, incomparable_j = -1;
    int witness_in_i = -1, witness_in_j = -1;
};

/// Sorts by (size desc, bit pattern) and verifies pairwise inclusion of
/// neighbours: a size-sorted order is inclusion-compatible iff a total
/// preorder exists, and any failing neighbour pair is itself incomparable.
inline PreorderCheck check_total_preorder(const std::vector<std::vector<int>>& sets, int universe) {
    const size_t words = (static_cast<size_t>(universe) + 63) / 64;
    const size_t k = sets.size();
    std::vector<std::vector<uint64_t>> bits(k, std::vector<uint64_t>(words, 0));
    std::vector<size_t> size(k, 0);
    for (size_t i = 0; i < k; ++i) {
        for (int v : sets[i]) {
            uint64_t& w = bits[i][v / 64];
            uint64_t b = uint64_t{1} << (v % 64);
            if (!(w & b)) ++size[i];
            w |= b;
        }
    }

    PreorderCheck out;
    out.order.resize(k);
    for (size_t i = 0; i < k; ++i) out.order[i] = static_cast<int>(i);
    std::sort(out.order.begin(), out.order.end(), [&](int x, int y) {
        if (size[x] != size[y]) return size[x] > size[y];
        if (bits[x] != bits[y]) return bits[x] < bits[y];
        return x < y;
    });

    auto first_diff = [&](int big, int small) {
        // element of sets[small] missing from sets[big]
        for (size_t w = 0; w < words; ++w) {
            uint64_t d = bits[small][w] & ~bits[big][w];
            if (d) return static_cast<int>(w * 64 + std::countr_zero(d));
        }
        return -1;
    };

    out.group.resize(k);
    for (size_t pos = 1; pos < k; ++pos) {
        int a = out.order[pos - 1], b = out.order[pos];
        int missing = first_diff(a, b);
        if (missing != -1) {
            out.total = false;
            out.incomparable_i = a;
            out.incomparable_j = b;
            out.witness_in_j = missing;         // in b, not in a
            out.witness_in_i = first_diff(b, a); // in a, not in b (sizes force one)
            return out;
        }
    }
    out.total = true;
    int gid = 0;
    for (size_t pos = 0; pos < k; ++pos) {
        if (pos > 0 && bits[out.order[pos]] != bits[out.order[pos - 1]]) ++gid;
        out.group[pos] = gid;
    }
    return out;
}

} // namespace grg
