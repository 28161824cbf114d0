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

TEST_CASE("max_value_general reference values") {
    REQUIRE(max_value_general(testutil::fig1()).value == 2);
    REQUIRE(max_value_general(testutil::fig1_adam()).value == 1);
    GameSpec empty = testutil::fig1();
    empty.singletons.clear();
    REQUIRE(max_value_general(empty).value == 0);
}

TEST_CASE("max_value_general on the triangle vertex-cover game") {
    UndirectedGraph k3{3, {{0, 1}, {1, 2}, {0, 2}}};
    ReducedGame red = vertex_cover_to_game(k3);
    REQUIRE(min_vertex_cover(k3) == 2);
    REQUIRE(max_value_general(red.game).value == 2);
}

TEST_CASE("max_value_eve_scc agrees with the product solver") {
    SECTION("all-Eve reference game") {
        GameSpec g = testutil::fig1(Player::Eve, true);
        ValueResult scc = max_value_eve_scc(g);
        REQUIRE(scc.value == max_value_general(g).value);
        auto& path = std::get<SccPath>(scc.witness);
        int sum = 0;
        for (int w : path.weights) sum += w;
        REQUIRE(sum == scc.value);
    }
    SECTION("single component holding every target") {
        GameSpec g;
        g.arena.owner.assign(4, Player::Eve);
        g.arena.successors = {{1}, {2}, {3}, {0}};
        g.start = 0;
        g.singletons = {0, 1, 2, 3};
        REQUIRE(max_value_eve_scc(g).value == 4);
    }
    SECTION("branching DAG takes the heavier branch") {
        // 0 -> 1 (1 target) or 0 -> 2,3,4 chain (3 targets)
        GameSpec g;
        g.arena.owner.assign(5, Player::Eve);
        g.arena.successors = {{1, 2}, {1}, {3}, {4}, {4}};
        g.start = 0;
        g.singletons = {1, 2, 3, 4};
        REQUIRE(max_value_eve_scc(g).value == 3);
    }
    SECTION("wrong class") {
        REQUIRE_THROWS_AS(max_value_eve_scc(testutil::fig1()), WrongClass);
    }
}

TEST_CASE("max_value_adam_lasso reference values") {
    SECTION("all-Adam reference game settles at v") {
        ValueResult r = max_value_adam_lasso(testutil::fig1_adam());
        REQUIRE(r.value == 1);
        auto& w = std::get<LassoValue>(r.witness);
        REQUIRE(w.distinct_targets == 1);
    }
    SECTION("a target-free lasso gives value zero") {
        GameSpec g;
        g.arena.owner.assign(3, Player::Adam);
        g.arena.successors = {{1}, {1}, {2}};
        g.start = 0;
        g.singletons = {2}; // unreachable self-looping target
        REQUIRE(max_value_adam_lasso(g).value == 0);
    }
    SECTION("forced cycle through the target") {
        GameSpec g;
        g.arena.owner.assign(2, Player::Adam);
        g.arena.successors = {{1}, {0}};
        g.start = 0;
        g.singletons = {1};
        REQUIRE(max_value_adam_lasso(g).value == 1);
    }
    SECTION("wrong class") {
        REQUIRE_THROWS_AS(max_value_adam_lasso(testutil::fig1()), WrongClass);
    }
}

TEST_CASE("max_value_adam_general handles large sets") {
    REQUIRE(max_value_adam_general(testutil::fig1_adam()).value == 1);
    GameSpec g = testutil::fig1_adam();
    g.singletons = {6};
    g.large_sets = {{2, 4}}; // one of u1/u3 is unavoidable from u
    ValueResult r = max_value_adam_general(g);
    REQUIRE(r.value == 1); // Adam goes to u and loops, hitting the large set
    REQUIRE(max_value_adam_general(g).value == oracle_max(g));
}

TEST_CASE("promise_value_adam reference values") {
    REQUIRE(promise_value_adam(testutil::fig1_adam()).value == 0);
    SECTION("forced chain visits both promised targets") {
        GameSpec g;
        g.arena.owner.assign(3, Player::Adam);
        g.arena.successors = {{1}, {2}, {2}};
        g.start = 0;
        g.singletons = {1, 2};
        ValueResult r = promise_value_adam(g);
        REQUIRE(r.value == 2);
        REQUIRE(std::get<PromisedSubset>(r.witness).targets == std::vector<int>{0, 1});
    }
}

TEST_CASE("promise_value_singleton reference values") {
    SECTION("reference game pledges exactly v") {
        ValueResult r = promise_value_singleton(testutil::fig1());
        REQUIRE(r.value == 1);
        auto& subset = std::get<PromisedSubset>(r.witness);
        REQUIRE(subset.targets == std::vector<int>{4}); // target index of vertex 6
    }
    SECTION("forced chain pledges both") {
        GameSpec g;
        g.arena.owner.assign(3, Player::Eve);
        g.arena.successors = {{1}, {2}, {2}};
        g.start = 0;
        g.singletons = {1, 2};
        REQUIRE(promise_value_singleton(g).value == 2);
    }
    SECTION("cross edges merge the pairs into one component") {
        GameSpec g = testutil::fig1();
        g.arena.successors[3] = {2, 4}; // u2 -> u3
        g.arena.successors[5] = {4, 2}; // u4 -> u1
        ValueResult r = promise_value_singleton(g);
        REQUIRE(r.value == oracle_promise(g));
    }
}

TEST_CASE("promise_value_general matches brute force") {
    REQUIRE(promise_value_general(testutil::fig1()).value == 1);
    REQUIRE(promise_value_general(testutil::fig1_adam()).value == 0);
    SECTION("full win pledges everything") {
        GameSpec g;
        g.arena.owner.assign(3, Player::Eve);
        g.arena.successors = {{1}, {2}, {2}};
        g.start = 0;
        g.singletons = {1, 2};
        g.large_sets = {{0, 1}};
        REQUIRE(solve_general(g).winner == Player::Eve);
        ValueResult r = promise_value_general(g);
        REQUIRE(r.value == g.target_count());
    }
}

TEST_CASE("promised subsets replay as Eve wins") {
    Rng rng(1618);
    for (int i = 0; i < 150; ++i) {
        PlayerProfile prof = i % 2 ? PlayerProfile::TwoPlayer : PlayerProfile::OnlyAdam;
        GameSpec g = testutil::sample_game(rng, prof);
        ValueResult r = promise_value(g);
        auto* subset = std::get_if<PromisedSubset>(&r.witness);
        REQUIRE(subset != nullptr);
        REQUIRE(static_cast<int>(subset->targets.size()) == r.value);
        REQUIRE(solve_general(restrict_targets(g, subset->targets)).winner == Player::Eve);
    }
}

TEST_CASE("lasso witnesses hit exactly the reported count") {
    Rng rng(2718);
    for (int i = 0; i < 150; ++i) {
        GameSpec g = testutil::sample_game(rng, PlayerProfile::OnlyAdam);
        ValueResult r = g.large_sets.empty() ? max_value_adam_lasso(g)
                                             : max_value_adam_general(g);
        auto& w = std::get<LassoValue>(r.witness);
        REQUIRE(w.distinct_targets == r.value);
        // replay: legal play hitting exactly the reported sets
        std::vector<int> walk = w.lasso.prefix;
        walk.insert(walk.end(), w.lasso.cycle.begin(), w.lasso.cycle.end());
        REQUIRE(walk.front() == g.start);
        for (size_t j = 0; j + 1 < walk.size(); ++j) {
            const auto& succ = g.arena.successors[walk[j]];
            REQUIRE(std::find(succ.begin(), succ.end(), walk[j + 1]) != succ.end());
        }
        const auto& succ = g.arena.successors[walk.back()];
        REQUIRE(std::find(succ.begin(), succ.end(), w.lasso.cycle.front()) != succ.end());
        int distinct = 0;
        for (int t = 0; t < g.target_count(); ++t) {
            bool hit = false;
            for (int v : walk) hit |= g.target_contains(t, v);
            distinct += hit;
        }
        REQUIRE(distinct == r.value);
    }
}

TEST_CASE("sandwich: promise <= max <= total targets") {
    Rng rng(5050);
    for (int i = 0; i < 250; ++i) {
        PlayerProfile prof = i % 3 == 0   ? PlayerProfile::TwoPlayer
                             : i % 3 == 1 ? PlayerProfile::OnlyEve
                                          : PlayerProfile::OnlyAdam;
        GameSpec g = testutil::sample_game(rng, prof);
        int prom = promise_value(g).value;
        int mx = max_value(g).value;
        REQUIRE(prom <= mx);
        REQUIRE(mx <= g.target_count());
        // consistency with the decision problem
        REQUIRE((mx == g.target_count()) == (solve_general(g).winner == Player::Eve));
        REQUIRE((prom == g.target_count()) == (solve_general(g).winner == Player::Eve));
    }
}

TEST_CASE("optimisation dispatch names the executed algorithm") {
    REQUIRE(std::string(max_value(testutil::fig1()).algo) == "max-product");
    REQUIRE(std::string(max_value(testutil::fig1(Player::Eve, true)).algo) == "max-scc");
    REQUIRE(std::string(max_value(testutil::fig1_adam()).algo) == "max-lasso");
    GameSpec g = testutil::fig1_adam();
    g.large_sets = {{2, 4}};
    REQUIRE(std::string(max_value(g).algo) == "max-adam-product");
    REQUIRE(std::string(promise_value(testutil::fig1_adam()).algo) == "promise-adam");
    REQUIRE(std::string(promise_value(testutil::fig1()).algo) == "promise-preorder");
    GameSpec g2 = testutil::fig1();
    g2.large_sets = {{0, 1}};
    REQUIRE(std::string(promise_value(g2).algo) == "promise-subsets");
}
