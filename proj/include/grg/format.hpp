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
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arena.hpp"

namespace grg {

// Game file format (line oriented, `#` starts a comment, blank lines
// ignored):
//
//   grg 1
//   vertex <id> <E|A> <succ,succ,...>
//   start <id>
//   target <id> [<id> ...]
//
// Vertex ids must be exactly 0..n-1 (any declaration order). A one-id target
// line is a singleton; duplicate singleton targets are collapsed with a
// warning.

struct ParsedGame {
    GameSpec game;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    std::string s = pos == std::string::npos ? line : line.substr(0, pos);
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    size_t b = s.find_first_not_of(" \t");
    return b == std::string::npos ? std::string{} : s.substr(b);
}

inline int parse_int(const std::string& tok, int line, const char* what) {
    try {
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    }
}

} // namespace detail

inline ParsedGame parse_game(std::istream& in) {
    ParsedGame out;
    std::string raw;
    int lineno = 0;
    bool saw_header = false;
    std::optional<int> start;
    int start_line = 0;

    struct VertexDecl {
        Player owner;
        std::vector<int> succ;
        int line;
    };
    std::vector<std::optional<VertexDecl>> decls;
    struct TargetDecl {
        std::vector<int> ids;
        int line;
    };
    std::vector<TargetDecl> targets;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip_comment(raw);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;

        if (!saw_header) {
            std::string ver;
            ls >> ver;
            if (kw != "grg" || ver != "1")
                throw ParseError(lineno, "expected header 'grg 1'");
            saw_header = true;
            continue;
        }

        if (kw == "vertex") {
            std::string id_tok, owner_tok, succ_tok;
            if (!(ls >> id_tok >> owner_tok >> succ_tok))
                throw ParseError(lineno, "vertex line needs <id> <E|A> <succ,...>");
            int id = detail::parse_int(id_tok, lineno, "vertex id");
            if (id < 0) throw ParseError(lineno, "negative vertex id");
            Player owner;
            if (owner_tok == "E")
                owner = Player::Eve;
            else if (owner_tok == "A")
                owner = Player::Adam;
            else
                throw ParseError(lineno, "owner must be E or A, got '" + owner_tok + "'");
            std::vector<int> succ;
            std::string item;
            std::istringstream ss(succ_tok);
            while (std::getline(ss, item, ',')) {
                if (item.empty()) throw ParseError(lineno, "empty successor entry");
                succ.push_back(detail::parse_int(item, lineno, "successor id"));
            }
            if (succ.empty()) throw ParseError(lineno, "vertex with empty successor list");
            if (static_cast<size_t>(id) >= decls.size()) decls.resize(id + 1);
            if (decls[id])
                throw ParseError(lineno, "duplicate declaration of vertex " + std::to_string(id));
            decls[id] = VertexDecl{owner, std::move(succ), lineno};
        } else if (kw == "start") {
            std::string tok;
            if (!(ls >> tok)) throw ParseError(lineno, "start line needs a vertex id");
            if (start) throw ParseError(lineno, "duplicate start line");
            start = detail::parse_int(tok, lineno, "start vertex id");
            start_line = lineno;
        } else if (kw == "target") {
            TargetDecl t;
            t.line = lineno;
            std::string tok;
            while (ls >> tok) t.ids.push_back(detail::parse_int(tok, lineno, "target vertex id"));
            if (t.ids.empty()) throw ParseError(lineno, "target line without vertices");
            targets.push_back(std::move(t));
        } else {
            throw ParseError(lineno, "unknown keyword '" + kw + "'");
        }
    }

    if (!saw_header) throw ParseError(lineno, "missing 'grg 1' header");
    const int n = static_cast<int>(decls.size());
    if (n == 0) throw ParseError(lineno, "no vertices declared");

    GameSpec& g = out.game;
    g.arena.owner.resize(n);
    g.arena.successors.resize(n);
    for (int v = 0; v < n; ++v) {
        if (!decls[v]) throw ParseError(lineno, "vertex " + std::to_string(v) + " never declared");
        g.arena.owner[v] = decls[v]->owner;
        g.arena.successors[v] = decls[v]->succ;
        for (int w : decls[v]->succ)
            if (w < 0 || w >= n)
                throw ParseError(decls[v]->line, "dangling successor id " + std::to_string(w));
        std::vector<char> seen(n, 0);
        for (int w : decls[v]->succ) {
            if (seen[w])
                throw ParseError(decls[v]->line,
                                 "duplicate successor " + std::to_string(w) + " of vertex " +
                                     std::to_string(v));
            seen[w] = 1;
        }
    }

    if (!start) throw ParseError(lineno, "missing start line");
    if (*start < 0 || *start >= n)
        throw ParseError(start_line, "start vertex " + std::to_string(*start) + " out of range");
    g.start = *start;

    for (auto& t : targets) {
        for (int v : t.ids)
            if (v < 0 || v >= n)
                throw ParseError(t.line, "target vertex " + std::to_string(v) + " out of range");
        // a target line is a set: drop repeated ids, keep first occurrences
        std::vector<int> ids;
        for (int v : t.ids) {
            if (std::find(ids.begin(), ids.end(), v) == ids.end())
                ids.push_back(v);
            else
                out.warnings.push_back("line " + std::to_string(t.line) + ": repeated vertex " +
                                       std::to_string(v) + " in target set");
        }
        if (ids.size() == 1) {
            int v = ids[0];
            if (std::find(g.singletons.begin(), g.singletons.end(), v) != g.singletons.end())
                out.warnings.push_back("line " + std::to_string(t.line) +
                                       ": duplicate singleton target " + std::to_string(v) +
                                       " collapsed");
            else
                g.singletons.push_back(v);
        } else {
            g.large_sets.push_back(std::move(ids));
        }
    }

    validate_game(g);
    return out;
}

inline ParsedGame parse_game(const std::string& text) {
    std::istringstream in(text);
    return parse_game(in);
}

/// Writes the bit-exact text form: vertices in id order, then start, then one
/// target line per singleton and per large set. `labels`, when given, adds a
/// `# label:` comment per vertex.
inline std::string serialize_game(const GameSpec& g, const std::vector<std::string>& labels = {}) {
    std::ostringstream os;
    os << "grg 1\n";
    const int n = g.arena.vertex_count();
    for (int v = 0; v < n; ++v) {
        os << "vertex " << v << ' ' << player_letter(g.arena.owner[v]) << ' ';
        const auto& succ = g.arena.successors[v];
        for (size_t i = 0; i < succ.size(); ++i) os << (i ? "," : "") << succ[i];
        if (static_cast<size_t>(v) < labels.size() && !labels[v].empty())
            os << "  # label: " << labels[v];
        os << '\n';
    }
    os << "start " << g.start << '\n';
    for (int t : g.singletons) os << "target " << t << '\n';
    for (const auto& f : g.large_sets) {
        os << "target";
        for (int v : f) os << ' ' << v;
        os << '\n';
    }
    return os.str();
}

} // namespace grg
