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

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include <json.hpp>

#include "testutil.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using testutil::run_cli;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("grg_cli_test_" + std::to_string(getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string first_line(const std::string& text) {
    auto lines = testutil::lines_of(text);
    return lines.empty() ? std::string{} : lines.front();
}

} // namespace

TEST_CASE("solve command on the reference files") {
    auto r = run_cli("solve " + testutil::data_path("fig1.grg"));
    REQUIRE(r.exit_code == 0);
    auto lines = testutil::lines_of(r.output);
    REQUIRE(lines.at(0) == "winner adam");
    REQUIRE(lines.at(1) == "algo chain");

    auto adam = run_cli("solve " + testutil::data_path("fig1-adam.grg"));
    REQUIRE(adam.exit_code == 0);
    REQUIRE(first_line(adam.output) == "winner adam");
}

TEST_CASE("exit codes follow the table") {
    TempDir tmp;
    SECTION("forced specialist on the wrong class exits 3") {
        auto r = run_cli("solve " + testutil::data_path("fig1.grg") + " --algo one-large");
        REQUIRE(r.exit_code == 3);
        auto r2 = run_cli("solve " + testutil::data_path("fig1.grg") + " --algo adam");
        REQUIRE(r2.exit_code == 3);
    }
    SECTION("parse errors exit 2") {
        fs::path bad = tmp.path / "bad.grg";
        std::ofstream(bad) << "grg 1\nvertex 0 E 5\nstart 0\n";
        REQUIRE(run_cli("solve " + bad.string()).exit_code == 2);
        REQUIRE(run_cli("solve " + (tmp.path / "missing.grg").string()).exit_code == 2);
        REQUIRE(run_cli("gen --vertices 0 --seed 1").exit_code == 2);
    }
    SECTION("budget violations exit 4") {
        fs::path game = tmp.path / "game.grg";
        std::ofstream(game) << grg::serialize_game(testutil::fig1());
        auto r = run_cli("oracle " + game.string() + " --max-vertices 3");
        REQUIRE(r.exit_code == 4);
    }
    SECTION("decision mode exits 1 below the bound") {
        auto r = run_cli("promise " + testutil::data_path("fig1-adam.grg") + " --k 1");
        REQUIRE(r.exit_code == 1);
        REQUIRE(first_line(r.output) == "value 0");
        auto ok = run_cli("max " + testutil::data_path("fig1.grg") + " --k 2");
        REQUIRE(ok.exit_code == 0);
    }
}

TEST_CASE("value commands report the ledger numbers") {
    auto mx = run_cli("max " + testutil::data_path("fig1.grg"));
    REQUIRE(mx.exit_code == 0);
    REQUIRE(first_line(mx.output) == "value 2");

    auto pr = run_cli("promise " + testutil::data_path("fig1.grg"));
    REQUIRE(pr.exit_code == 0);
    auto lines = testutil::lines_of(pr.output);
    REQUIRE(lines.at(0) == "value 1");
    bool promised_v = false;
    for (const auto& l : lines) promised_v |= l.find("promised targets 4") != std::string::npos;
    REQUIRE(promised_v);

    auto madam = run_cli("max " + testutil::data_path("fig1-adam.grg"));
    REQUIRE(first_line(madam.output) == "value 1");
    auto padam = run_cli("promise " + testutil::data_path("fig1-adam.grg"));
    REQUIRE(first_line(padam.output) == "value 0");
}

TEST_CASE("check mode cross-validates against the oracle") {
    auto r = run_cli("solve " + testutil::data_path("fig1.grg") + " --check");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("check ok") != std::string::npos);
    auto m = run_cli("max " + testutil::data_path("fig1.grg") + " --check");
    REQUIRE(m.exit_code == 0);
    auto p = run_cli("promise " + testutil::data_path("fig1-adam.grg") + " --check");
    REQUIRE(p.exit_code == 0);
}

TEST_CASE("json output carries the same verdict") {
    auto r = run_cli("solve " + testutil::data_path("fig1.grg") + " --json");
    REQUIRE(r.exit_code == 0);
    json o = json::parse(first_line(r.output));
    REQUIRE(o.at("command") == "solve");
    REQUIRE(o.at("winner") == "adam");
    REQUIRE(o.at("algo") == "chain");
    REQUIRE(o.contains("witness"));
    REQUIRE(o.contains("micros"));
    REQUIRE(o.contains("states"));
    REQUIRE(o.at("file").get<std::string>().find("fig1.grg") != std::string::npos);

    auto m = run_cli("max " + testutil::data_path("fig1.grg") + " --json");
    json mo = json::parse(first_line(m.output));
    REQUIRE(mo.at("value") == 2);
}

TEST_CASE("deterministic stdout for deterministic inputs") {
    auto once = run_cli("solve " + testutil::data_path("fig1.grg"));
    auto twice = run_cli("solve " + testutil::data_path("fig1.grg"));
    REQUIRE(once.output == twice.output);

    auto g1 = run_cli("gen --vertices 8 --edges 16 --targets 3 --seed 7");
    auto g2 = run_cli("gen --vertices 8 --edges 16 --targets 3 --seed 7");
    REQUIRE(g1.exit_code == 0);
    REQUIRE(g1.output == g2.output);
    auto g3 = run_cli("gen --vertices 8 --edges 16 --targets 3 --seed 8");
    REQUIRE_FALSE(g1.output == g3.output);
}

TEST_CASE("reduce produces the documented sizes") {
    TempDir tmp;
    SECTION("qbf") {
        auto r = run_cli("reduce qbf " + testutil::data_path("phi1.qdimacs"));
        REQUIRE(r.exit_code == 0);
        grg::GameSpec g = grg::parse_game(r.output).game;
        REQUIRE(g.arena.vertex_count() == 13);
        // label comments survive in the output
        REQUIRE(r.output.find("# label: q1") != std::string::npos);
        auto again = run_cli("reduce qbf " + testutil::data_path("phi1.qdimacs"));
        REQUIRE(again.output == r.output);
    }
    SECTION("st-reach") {
        auto r = run_cli("reduce st-reach " + testutil::data_path("h3.graph") +
                         " --source 1 --sink 3");
        REQUIRE(r.exit_code == 0);
        REQUIRE(grg::parse_game(r.output).game.arena.vertex_count() == 14);
    }
    SECTION("st-reach without endpoints exits 2") {
        auto r = run_cli("reduce st-reach " + testutil::data_path("h3.graph"));
        REQUIRE(r.exit_code == 2);
    }
    SECTION("vertex-cover") {
        auto r = run_cli("reduce vertex-cover " + testutil::data_path("k3.graph"));
        REQUIRE(r.exit_code == 0);
        REQUIRE(grg::parse_game(r.output).game.arena.vertex_count() == 6);
    }
    SECTION("cnf requires an owner") {
        fs::path cnf = tmp.path / "f.cnf";
        std::ofstream(cnf) << "p cnf 1 2\n1 0\n-1 0\n";
        REQUIRE(run_cli("reduce cnf " + cnf.string()).exit_code == 2);
        auto r = run_cli("reduce cnf " + cnf.string() + " --owner eve");
        REQUIRE(r.exit_code == 0);
    }
    SECTION("malformed input exits 2") {
        fs::path bad = tmp.path / "bad.qdimacs";
        std::ofstream(bad) << "p cnf 1 1\n1\n";
        REQUIRE(run_cli("reduce qbf " + bad.string()).exit_code == 2);
    }
    SECTION("-o writes the file") {
        fs::path out = tmp.path / "game.grg";
        auto r = run_cli("reduce vertex-cover " + testutil::data_path("k3.graph") + " -o " +
                         out.string());
        REQUIRE(r.exit_code == 0);
        REQUIRE(fs::exists(out));
        std::ifstream in(out);
        REQUIRE(grg::parse_game(in).game.arena.vertex_count() == 6);
    }
}

TEST_CASE("bench runs a directory and cross-checks") {
    TempDir tmp;
    for (int seed = 1; seed <= 6; ++seed) {
        std::string name = (tmp.path / ("g" + std::to_string(seed) + ".grg")).string();
        auto r = run_cli("gen --vertices 7 --edges 14 --targets 2 --large-sets 1 --seed " +
                         std::to_string(seed) + " -o " + name);
        REQUIRE(r.exit_code == 0);
    }
    auto bench = run_cli("bench " + tmp.path.string() + " --check");
    REQUIRE(bench.exit_code == 0);
    auto lines = testutil::lines_of(bench.output);
    REQUIRE(lines.size() >= 7); // six files plus the summary
    int data_lines = 0;
    for (const auto& l : lines)
        if (l.find("check=ok") != std::string::npos) ++data_lines;
    REQUIRE(data_lines == 6);
    bool summary = false;
    for (const auto& l : lines) summary |= l.rfind("bench files 6", 0) == 0;
    REQUIRE(summary);

    SECTION("parallel jobs preserve the output order") {
        auto serial = run_cli("bench " + tmp.path.string());
        auto parallel = run_cli("bench " + tmp.path.string() + " --jobs 4");
        auto strip_micros = [](std::string text) {
            // timing is the only nondeterministic field
            for (size_t pos = text.find(" micros="); pos != std::string::npos;
                 pos = text.find(" micros=", pos + 1)) {
                size_t end = text.find_first_of(" \n", pos + 8);
                text.erase(pos, end - pos);
            }
            return text;
        };
        REQUIRE(strip_micros(serial.output) == strip_micros(parallel.output));
    }
    SECTION("json bench emits one object per file") {
        auto jb = run_cli("bench " + tmp.path.string() + " --json");
        auto jlines = testutil::lines_of(jb.output);
        REQUIRE(jlines.size() == 7);
        for (const auto& l : jlines) REQUIRE_NOTHROW(json::parse(l));
    }
}

TEST_CASE("start-mask flag switches the product convention") {
    TempDir tmp;
    fs::path file = tmp.path / "seeded.grg";
    {
        // start belongs to the only large set, cannot be revisited, and the
        // other member is unreachable
        grg::GameSpec g;
        g.arena.owner = {grg::Player::Eve, grg::Player::Eve, grg::Player::Eve};
        g.arena.successors = {{1}, {1}, {2}};
        g.start = 0;
        g.large_sets = {{0, 2}};
        std::ofstream(file) << grg::serialize_game(g);
    }
    auto seeded = run_cli("solve " + file.string() + " --algo product");
    REQUIRE(first_line(seeded.output) == "winner eve");
    auto literal = run_cli("solve " + file.string() + " --algo product --start-mask empty");
    REQUIRE(first_line(literal.output) == "winner adam");
}
