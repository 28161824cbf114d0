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

#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace grg {

/// Quantified Boolean formula in prenex CNF. Variables are 1-based; literals
/// are signed variable ids. Prefixes need not alternate strictly, but every
/// clause literal must reference a quantified variable.
struct Qbf {
    struct Quantifier {
        int variable;
        bool existential;
    };
    std::vector<Quantifier> prefix;
    std::vector<std::vector<int>> clauses;
};

inline void validate_qbf(const Qbf& q) {
    std::vector<char> bound;
    for (const auto& qv : q.prefix) {
        if (qv.variable <= 0) throw ValidationError("quantified variable must be positive");
        if (static_cast<size_t>(qv.variable) >= bound.size() + 1) bound.resize(qv.variable, 0);
        if (bound[qv.variable - 1]) throw ValidationError("variable quantified twice");
        bound[qv.variable - 1] = 1;
    }
    for (const auto& c : q.clauses) {
        if (c.empty()) throw ValidationError("empty clause");
        for (int lit : c) {
            int v = lit < 0 ? -lit : lit;
            if (v == 0 || static_cast<size_t>(v) > bound.size() || !bound[v - 1])
                throw ValidationError("literal " + std::to_string(lit) +
                                      " references an unquantified variable");
        }
    }
}

/// Plain CNF: variables 1..variable_count, clauses of signed literals.
struct Cnf {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;
};

struct Digraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges; // 0-based
};

struct UndirectedGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges; // 0-based, unordered pairs
};

namespace detail {

inline bool data_line(const std::string& raw, std::string& out) {
    std::string s = raw;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return false;
    if (s[b] == 'c' && (b + 1 >= s.size() || s[b + 1] == ' ' || s[b + 1] == '\t')) return false;
    if (s.compare(b, 1, "c") == 0 && b + 1 == s.size()) return false;
    out = s.substr(b);
    return true;
}

} // namespace detail

/// QDIMACS reader. Clause literals must be quantified; free variables are
/// rejected rather than defaulted.
inline Qbf parse_qdimacs(std::istream& in) {
    Qbf q;
    std::string raw, line;
    int lineno = 0;
    int vars = -1, clauses_expected = -1;
    bool in_matrix = false;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!detail::data_line(raw, line)) continue;
        std::istringstream ls(line);
        if (vars < 0) {
            std::string p, kind;
            if (!(ls >> p >> kind >> vars >> clauses_expected) || p != "p" || kind != "cnf" ||
                vars < 0)
                throw ParseError(lineno, "expected 'p cnf <vars> <clauses>'");
            continue;
        }
        std::string head;
        ls >> head;
        if ((head == "a" || head == "e") && !in_matrix) {
            int v;
            bool terminated = false;
            while (ls >> v) {
                if (v == 0) {
                    terminated = true;
                    break;
                }
                if (v < 0 || v > vars) throw ParseError(lineno, "quantified variable out of range");
                q.prefix.push_back({v, head == "e"});
            }
            if (!terminated) throw ParseError(lineno, "quantifier line must end with 0");
        } else {
            in_matrix = true;
            std::istringstream cs(line);
            int lit;
            bool terminated = false;
            std::vector<int> clause;
            while (cs >> lit) {
                if (lit == 0) {
                    terminated = true;
                    break;
                }
                int v = lit < 0 ? -lit : lit;
                if (v > vars) throw ParseError(lineno, "literal out of range");
                clause.push_back(lit);
            }
            if (!terminated) throw ParseError(lineno, "clause must end with 0");
            if (clause.empty()) throw ParseError(lineno, "empty clause");
            q.clauses.push_back(std::move(clause));
        }
    }
    if (vars < 0) throw ParseError(lineno, "missing 'p cnf' header");
    try {
        validate_qbf(q);
    } catch (const ValidationError& e) {
        throw ParseError(0, e.what());
    }
    return q;
}

inline Cnf parse_dimacs_cnf(std::istream& in) {
    Cnf f;
    std::string raw, line;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!detail::data_line(raw, line)) continue;
        std::istringstream ls(line);
        if (!header) {
            std::string p, kind;
            int nc;
            if (!(ls >> p >> kind >> f.variable_count >> nc) || p != "p" || kind != "cnf" ||
                f.variable_count < 0)
                throw ParseError(lineno, "expected 'p cnf <vars> <clauses>'");
            header = true;
            continue;
        }
        int lit;
        bool terminated = false;
        std::vector<int> clause;
        while (ls >> lit) {
            if (lit == 0) {
                terminated = true;
                break;
            }
            int v = lit < 0 ? -lit : lit;
            if (v > f.variable_count) throw ParseError(lineno, "literal out of range");
            clause.push_back(lit);
        }
        if (!terminated) throw ParseError(lineno, "clause must end with 0");
        if (clause.empty()) throw ParseError(lineno, "empty clause");
        f.clauses.push_back(std::move(clause));
    }
    if (!header) throw ParseError(lineno, "missing 'p cnf' header");
    return f;
}

/// DIMACS-like `p edge <n> <m>` with `e <u> <v>` lines, 1-based on disk and
/// 0-based in memory. Directedness is up to the consuming reduction.
inline Digraph parse_edge_graph(std::istream& in) {
    Digraph g;
    std::string raw, line;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!detail::data_line(raw, line)) continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (!header) {
            std::string kind;
            int m;
            if (head != "p" || !(ls >> kind >> g.vertex_count >> m) || kind != "edge" ||
                g.vertex_count < 0)
                throw ParseError(lineno, "expected 'p edge <n> <m>'");
            header = true;
            continue;
        }
        if (head != "e") throw ParseError(lineno, "expected edge line 'e <u> <v>'");
        int u, v;
        if (!(ls >> u >> v)) throw ParseError(lineno, "edge line needs two vertex ids");
        if (u < 1 || u > g.vertex_count || v < 1 || v > g.vertex_count)
            throw ParseError(lineno, "edge endpoint out of range");
        g.edges.emplace_back(u - 1, v - 1);
    }
    if (!header) throw ParseError(lineno, "missing 'p edge' header");
    return g;
}

inline UndirectedGraph as_undirected(const Digraph& d) {
    UndirectedGraph g;
    g.vertex_count = d.vertex_count;
    for (auto [u, v] : d.edges) {
        int a = u < v ? u : v, b = u < v ? v : u;
        bool dup = false;
        for (auto [x, y] : g.edges) dup |= (x == a && y == b);
        if (!dup) g.edges.emplace_back(a, b);
    }
    return g;
}

} // namespace grg
