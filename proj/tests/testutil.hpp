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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <grg/grg.hpp>

namespace testutil {

inline std::string data_path(const std::string& name) {
    return std::string(GRG_TEST_DATA_DIR) + "/" + name;
}

inline grg::GameSpec load_fixture(const std::string& name) {
    std::ifstream in(data_path(name));
    return grg::parse_game(in).game;
}

/// Fig-1 style reference game: s=0 (Eve), u=1 (Adam), pairs u1/u2 and u3/u4,
/// self-looping v; five singleton targets.
inline grg::GameSpec fig1(grg::Player everyone = grg::Player::Eve, bool uniform = false) {
    using grg::Player;
    grg::GameSpec g;
    g.arena.owner = {Player::Eve, Player::Adam, Player::Eve, Player::Eve,
                     Player::Eve, Player::Eve, Player::Eve};
    if (uniform)
        for (auto& o : g.arena.owner) o = everyone;
    g.arena.successors = {{1, 6}, {2, 4}, {3}, {2}, {5}, {4}, {6}};
    g.start = 0;
    g.singletons = {2, 3, 4, 5, 6};
    return g;
}

inline grg::GameSpec fig1_adam() { return fig1(grg::Player::Adam, true); }

struct SampleLimits {
    int max_vertices = 12;
    int max_singletons = 4;
    int max_large = 2;
    int max_targets = 5;
};

/// Seeded random instance within the oracle budget.
inline grg::GameSpec sample_game(grg::Rng& rng, grg::PlayerProfile profile,
                                 const SampleLimits& lim = {}) {
    for (;;) {
        grg::RandomGameParams p;
        p.vertices = 1 + rng.below_int(lim.max_vertices);
        long long max_edges = static_cast<long long>(p.vertices) * p.vertices;
        long long span = std::min<long long>(max_edges, 3LL * p.vertices) - p.vertices + 1;
        p.edges = p.vertices + (span > 0 ? static_cast<long long>(rng.below(span)) : 0);
        p.singleton_count = rng.below_int(std::min(p.vertices, lim.max_singletons) + 1);
        p.large_count = p.vertices >= 2 ? rng.below_int(lim.max_large + 1) : 0;
        p.large_size =
            p.vertices >= 2 ? 2 + rng.below_int(std::max(1, std::min(p.vertices, 4) - 1)) : 2;
        p.seed = rng.next();
        p.profile = profile;
        grg::GameSpec g = grg::random_game(p);
        if (g.target_count() <= lim.max_targets) return g;
    }
}

struct CliResult {
    int exit_code = -1;
    std::string output; // stdout only
};

/// Runs the built CLI binary; stderr passes through to the test log.
inline CliResult run_cli(const std::string& args) {
    CliResult r;
    std::string cmd = std::string(GRG_CLI_PATH) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

inline std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

} // namespace testutil
