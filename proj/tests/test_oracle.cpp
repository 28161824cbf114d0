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

#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace grg;

TEST_CASE("oracle reference values") {
    REQUIRE(oracle_max(testutil::fig1()) == 2);
    REQUIRE(oracle_max(testutil::fig1_adam()) == 1);
    REQUIRE(oracle_genreach(testutil::fig1()) == Player::Adam);
    REQUIRE(oracle_promise(testutil::fig1()) == 1);
    REQUIRE(oracle_promise(testutil::fig1_adam()) == 0);
    GameSpec empty = testutil::fig1();
    empty.singletons.clear();
    REQUIRE(oracle_max(empty) == 0);
    REQUIRE(oracle_genreach(empty) == Player::Eve);
}

TEST_CASE("oracle refuses instances over budget") {
    GameSpec g = testutil::fig1();
    OracleBudget tight;
    tight.max_vertices = 3;
    REQUIRE_THROWS_AS(oracle_max(g, tight), BudgetExceeded);
    OracleBudget targets;
    targets.max_targets = 2;
    REQUIRE_THROWS_AS(oracle_max(g, targets), BudgetExceeded);
    OracleBudget shallow;
    shallow.max_depth = 2; // below the vertex count
    REQUIRE_THROWS_AS(oracle_max(g, shallow), BudgetExceeded);
}

TEST_CASE("oracle internal consistency on random instances") {
    Rng rng(271828);
    for (int i = 0; i < 200; ++i) {
        PlayerProfile prof = i % 3 == 0   ? PlayerProfile::TwoPlayer
                             : i % 3 == 1 ? PlayerProfile::OnlyEve
                                          : PlayerProfile::OnlyAdam;
        GameSpec g = testutil::sample_game(rng, prof);
        int mx = oracle_max(g);
        int prom = oracle_promise(g);
        REQUIRE(prom <= mx);
        REQUIRE((oracle_genreach(g) == Player::Eve) == (mx == g.target_count()));

        // deeper search never changes the answer
        OracleBudget deeper;
        deeper.max_depth =
            static_cast<long long>(g.target_count() + 1) * g.arena.vertex_count() +
            g.arena.vertex_count();
        REQUIRE(oracle_max(g, deeper) == mx);

        // dropping a target set never hurts Eve
        if (g.target_count() > 0 && oracle_genreach(g) == Player::Eve) {
            std::vector<int> keep;
            for (int j = 1; j < g.target_count(); ++j) keep.push_back(j);
            REQUIRE(oracle_genreach(restrict_targets(g, keep)) == Player::Eve);
        }
    }
}

TEST_CASE("qbf_eval basics") {
    REQUIRE(qbf_eval(Qbf{{{1, true}}, {{1}}}));
    REQUIRE_FALSE(qbf_eval(Qbf{{{1, false}}, {{1}}}));
    REQUIRE(qbf_eval(Qbf{{{1, false}}, {{1, -1}}}));
    REQUIRE(qbf_eval(Qbf{{{1, false}, {2, true}}, {{-1, 2}, {1, -2}}}));
    SECTION("variable budget") {
        Qbf big;
        for (int v = 1; v <= 25; ++v) big.prefix.push_back({v, true});
        big.clauses = {{1}};
        REQUIRE_THROWS_AS(qbf_eval(big), BudgetExceeded);
    }
}

TEST_CASE("min_vertex_cover basics") {
    REQUIRE(min_vertex_cover(UndirectedGraph{3, {{0, 1}, {1, 2}, {0, 2}}}) == 2);
    REQUIRE(min_vertex_cover(UndirectedGraph{2, {{0, 1}}}) == 1);
    REQUIRE(min_vertex_cover(UndirectedGraph{4, {}}) == 0);
    REQUIRE_THROWS_AS(min_vertex_cover(UndirectedGraph{21, {{0, 1}}}), BudgetExceeded);
}

namespace {

/// Builds the positional product strategy that sends s to `first_move` and
/// otherwise follows the unique or smallest successor.
ProductStrategy eve_fixed_choice(const GameSpec& g, int first_move) {
    ProductStrategy strat;
    strat.for_player = Player::Eve;
    auto tmask = g.target_masks();
    std::vector<ProductState> todo{{g.start, tmask[g.start]}};
    std::vector<ProductState> seen = todo;
    while (!todo.empty()) {
        ProductState p = todo.back();
        todo.pop_back();
        std::vector<ProductState> next;
        if (g.arena.owner[p.vertex] == Player::Eve) {
            int w = p.vertex == g.start ? first_move : g.arena.successors[p.vertex].front();
            ProductState q{w, p.mask | tmask[w]};
            strat.moves[p] = q;
            next.push_back(q);
        } else {
            for (int w : g.arena.successors[p.vertex])
                next.push_back({w, p.mask | tmask[w]});
        }
        for (const auto& q : next)
            if (std::find(seen.begin(), seen.end(), q) == seen.end()) {
                seen.push_back(q);
                todo.push_back(q);
            }
    }
    return strat;
}

} // namespace

TEST_CASE("strategy_check scores fixed strategies") {
    GameSpec g = testutil::fig1();
    SECTION("committing to u secures two targets") {
        REQUIRE(strategy_check(g, eve_fixed_choice(g, 1)) == 2);
    }
    SECTION("committing to v secures only one") {
        REQUIRE(strategy_check(g, eve_fixed_choice(g, 6)) == 1);
    }
    SECTION("vacuous game scores zero") {
        GameSpec empty = g;
        empty.singletons.clear();
        REQUIRE(strategy_check(empty, eve_fixed_choice(empty, 1)) == 0);
    }
    SECTION("missing moves are detected") {
        ProductStrategy partial;
        partial.for_player = Player::Eve;
        REQUIRE_THROWS_AS(strategy_check(g, partial), PartialStrategy);
    }
    SECTION("illegal moves are detected") {
        ProductStrategy bogus = eve_fixed_choice(g, 1);
        for (auto& [from, to] : bogus.moves) {
            to.mask = ~to.mask; // corrupt the memory update
            break;
        }
        REQUIRE_THROWS_AS(strategy_check(g, bogus), PartialStrategy);
    }
}
