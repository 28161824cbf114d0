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

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <grg/grg.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitWrongClass = 3;
constexpr int kExitBudget = 4;

struct RunReport {
    std::string command;
    std::string file;
    uint64_t digest = 0;
    std::string algo;
    std::optional<grg::Player> winner;
    std::optional<int> value;
    json witness;
    long long micros = 0;
    long long states = 0;
};

uint64_t fnv1a(const std::string& data) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw grg::ParseError(0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

grg::GameSpec load_game(const std::string& path, uint64_t* digest) {
    std::string text = read_file(path);
    if (digest) *digest = fnv1a(text);
    grg::ParsedGame parsed = grg::parse_game(text);
    for (const auto& w : parsed.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
    return parsed.game;
}

size_t memory_budget_mb() {
    if (const char* env = std::getenv("GRG_MEMORY_MB")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
        std::cerr << "warning: ignoring malformed GRG_MEMORY_MB\n";
    }
    return 1024;
}

json mask_bits(uint64_t mask) {
    json bits = json::array();
    for (int j = 0; j < 64; ++j)
        if (mask >> j & 1) bits.push_back(j);
    return bits;
}

// ---------------------------------------------------------------------------
// Witness rendering (shared between text and json, bounded unless full)

constexpr size_t kWitnessBound = 50;

json lasso_json(const grg::Lasso& l, bool full) {
    size_t bound = full ? SIZE_MAX : kWitnessBound;
    json w;
    w["kind"] = "lasso";
    if (l.avoided_target >= 0) w["avoid"] = l.avoided_target;
    json prefix = json::array(), cycle = json::array();
    for (size_t i = 0; i < l.prefix.size() && i < bound; ++i) prefix.push_back(l.prefix[i]);
    for (size_t i = 0; i < l.cycle.size() && i < bound; ++i) cycle.push_back(l.cycle[i]);
    w["prefix"] = prefix;
    w["cycle"] = cycle;
    w["prefix_length"] = l.prefix.size();
    w["cycle_length"] = l.cycle.size();
    return w;
}

json certificate_json(const grg::Certificate& cert, bool full) {
    using namespace grg;
    return std::visit(
        [&](const auto& c) -> json {
            using T = std::decay_t<decltype(c)>;
            json w;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, VacuousWin>) {
                w["kind"] = "vacuous";
            } else if constexpr (std::is_same_v<T, ChainOrder>) {
                w["kind"] = "chain";
                w["order"] = c.visit_order;
                if (c.f0_detour_after >= 0) w["detour_after"] = c.f0_detour_after;
            } else if constexpr (std::is_same_v<T, IncomparabilityWitness>) {
                w["kind"] = "incomparable";
                w["targets"] = {c.target_i, c.target_j};
                w["elements"] = {c.only_in_i, c.only_in_j};
            } else if constexpr (std::is_same_v<T, FailedCondition>) {
                w["kind"] = "failed";
                w["reason"] = c.kind == FailedCondition::StartOutsideMinimalAttractor
                                  ? "start-outside-minimal-attractor"
                                  : (c.kind == FailedCondition::NoChainInsertion
                                         ? "no-chain-insertion"
                                         : "start-outside-product-region");
                if (c.target >= 0) w["target"] = c.target;
            } else if constexpr (std::is_same_v<T, Lasso>) {
                return lasso_json(c, full);
            } else if constexpr (std::is_same_v<T, ProductStrategy>) {
                w["kind"] = "strategy";
                w["player"] = player_name(c.for_player);
                w["entries"] = c.moves.size();
                json moves = json::array();
                size_t bound = full ? SIZE_MAX : kWitnessBound;
                for (const auto& [from, to] : c.moves) {
                    if (moves.size() >= bound) break;
                    moves.push_back({{"from", {from.vertex, from.mask}},
                                     {"to", {to.vertex, to.mask}}});
                }
                w["moves"] = moves;
            }
            return w;
        },
        cert);
}

json value_witness_json(const grg::ValueWitness& wit, bool full) {
    using namespace grg;
    return std::visit(
        [&](const auto& c) -> json {
            using T = std::decay_t<decltype(c)>;
            json w;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, PromisedSubset>) {
                w["kind"] = "promised";
                w["targets"] = c.targets;
            } else if constexpr (std::is_same_v<T, SccPath>) {
                w["kind"] = "scc-path";
                w["components"] = c.components;
                w["weights"] = c.weights;
            } else if constexpr (std::is_same_v<T, LassoValue>) {
                w = lasso_json(c.lasso, full);
                w["distinct"] = c.distinct_targets;
            } else if constexpr (std::is_same_v<T, ProductValueMap>) {
                w["kind"] = "value-map";
                w["entries"] = c.value.size();
                json values = json::array();
                size_t bound = full ? SIZE_MAX : kWitnessBound;
                for (const auto& [state, v] : c.value) {
                    if (values.size() >= bound) break;
                    values.push_back({state.vertex, state.mask, v});
                }
                w["values"] = values;
            }
            return w;
        },
        wit);
}

std::string witness_text(const json& w) {
    if (w.is_null()) return {};
    std::ostringstream os;
    os << "witness " << w.at("kind").get<std::string>();
    auto list = [&](const char* name) {
        if (!w.contains(name)) return;
        os << ' ' << name << ' ';
        const json& arr = w.at(name);
        for (size_t i = 0; i < arr.size(); ++i) {
            if (i) os << ',';
            if (arr[i].is_array()) {
                // strategy moves / value map triples
                os << arr[i].dump();
            } else {
                os << arr[i].dump();
            }
        }
        if (arr.empty()) os << '-';
    };
    std::string kind = w.at("kind");
    if (kind == "chain") {
        list("order");
        if (w.contains("detour_after")) os << " detour_after " << w["detour_after"];
    } else if (kind == "incomparable") {
        list("targets");
        list("elements");
    } else if (kind == "failed") {
        os << ' ' << w.at("reason").get<std::string>();
        if (w.contains("target")) os << " target " << w["target"];
    } else if (kind == "lasso") {
        if (w.contains("avoid")) os << " avoid " << w["avoid"];
        if (w.contains("distinct")) os << " distinct " << w["distinct"];
        list("prefix");
        list("cycle");
    } else if (kind == "strategy") {
        os << " player " << w.at("player").get<std::string>() << " entries " << w.at("entries");
    } else if (kind == "promised") {
        list("targets");
    } else if (kind == "scc-path") {
        list("components");
        list("weights");
    } else if (kind == "value-map") {
        os << " entries " << w.at("entries");
    }
    return os.str();
}

void emit_report(const RunReport& r, bool as_json, std::ostream& os) {
    if (as_json) {
        json o;
        o["command"] = r.command;
        o["file"] = r.file;
        o["algo"] = r.algo;
        if (r.winner) o["winner"] = player_name(*r.winner);
        if (r.value) o["value"] = *r.value;
        o["witness"] = r.witness;
        o["micros"] = r.micros;
        o["states"] = r.states;
        os << o.dump() << "\n";
        return;
    }
    if (r.winner) os << "winner " << player_name(*r.winner) << "\n";
    if (r.value) os << "value " << *r.value << "\n";
    os << "algo " << r.algo << "\n";
    std::string w = witness_text(r.witness);
    if (!w.empty()) os << w << "\n";
    if (r.states > 0) os << "states " << r.states << "\n";
}

// ---------------------------------------------------------------------------
// Subcommand state

struct SolveArgs {
    std::string file;
    std::string algo = "auto";
    std::string start_mask = "seeded";
    bool check = false;
    bool as_json = false;
    bool full_witness = false;
};

struct ValueArgs {
    std::string file;
    int k = -1;
    bool check = false;
    bool as_json = false;
    bool full_witness = false;
};

grg::SolveOptions solve_options(const SolveArgs& a) {
    grg::SolveOptions opts;
    opts.memory_mb = memory_budget_mb();
    if (a.algo == "auto") opts.algo = grg::SolveAlgo::Auto;
    else if (a.algo == "product") opts.algo = grg::SolveAlgo::Product;
    else if (a.algo == "chain") opts.algo = grg::SolveAlgo::Chain;
    else if (a.algo == "one-large") opts.algo = grg::SolveAlgo::OneLarge;
    else if (a.algo == "fpt") opts.algo = grg::SolveAlgo::Fpt;
    else if (a.algo == "adam") opts.algo = grg::SolveAlgo::Adam;
    opts.start_mask =
        a.start_mask == "empty" ? grg::StartMaskMode::Empty : grg::StartMaskMode::Seeded;
    return opts;
}

template <typename F> long long timed_micros(F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
}

int cmd_solve(const SolveArgs& a) {
    RunReport r;
    r.command = "solve";
    r.file = a.file;
    grg::GameSpec g = load_game(a.file, &r.digest);
    grg::SolveOutcome out;
    r.micros = timed_micros([&] { out = grg::solve(g, solve_options(a)); });
    r.algo = out.algo;
    r.winner = out.winner;
    r.states = out.product_states;
    r.witness = certificate_json(out.certificate, a.full_witness);
    emit_report(r, a.as_json, std::cout);
    if (a.check) {
        grg::Player ref = grg::oracle_genreach(g);
        if (ref != out.winner) {
            std::cout << "check mismatch solver " << player_name(out.winner) << " oracle "
                      << player_name(ref) << "\n";
            return kExitCheckFailed;
        }
        std::cout << "check ok\n";
    }
    return 0;
}

int cmd_value(const char* command, const ValueArgs& a) {
    const bool is_max = std::string(command) == "max";
    RunReport r;
    r.command = command;
    r.file = a.file;
    grg::GameSpec g = load_game(a.file, &r.digest);
    grg::ValueOptions opts;
    opts.memory_mb = memory_budget_mb();
    grg::ValueResult out;
    r.micros = timed_micros(
        [&] { out = is_max ? grg::max_value(g, opts) : grg::promise_value(g, opts); });
    r.algo = out.algo;
    r.value = out.value;
    r.states = out.product_states;
    r.witness = value_witness_json(out.witness, a.full_witness);
    emit_report(r, a.as_json, std::cout);
    if (a.check) {
        int ref = is_max ? grg::oracle_max(g) : grg::oracle_promise(g);
        if (ref != out.value) {
            std::cout << "check mismatch solver " << out.value << " oracle " << ref << "\n";
            return kExitCheckFailed;
        }
        std::cout << "check ok\n";
    }
    if (a.k >= 0 && out.value < a.k) return kExitCheckFailed;
    return 0;
}

struct OracleArgs {
    std::string file;
    std::string problem = "genreach";
    int max_vertices = 14;
    int max_targets = 6;
    bool as_json = false;
};

int cmd_oracle(const OracleArgs& a) {
    RunReport r;
    r.command = "oracle";
    r.file = a.file;
    grg::GameSpec g = load_game(a.file, &r.digest);
    grg::OracleBudget budget;
    budget.max_vertices = a.max_vertices;
    budget.max_targets = a.max_targets;
    r.algo = "oracle-" + a.problem;
    if (a.problem == "genreach") {
        grg::Player w{};
        r.micros = timed_micros([&] { w = grg::oracle_genreach(g, budget); });
        r.winner = w;
    } else if (a.problem == "max") {
        int v = 0;
        r.micros = timed_micros([&] { v = grg::oracle_max(g, budget); });
        r.value = v;
    } else {
        int v = 0;
        r.micros = timed_micros([&] { v = grg::oracle_promise(g, budget); });
        r.value = v;
    }
    emit_report(r, a.as_json, std::cout);
    return 0;
}

struct ReduceArgs {
    std::string kind;
    std::string input;
    std::string output;
    std::string owner;
    int source = -1;
    int sink = -1;
};

int cmd_reduce(const ReduceArgs& a) {
    std::string text = read_file(a.input);
    std::istringstream in(text);
    grg::ReducedGame reduced;
    if (a.kind == "qbf") {
        reduced = grg::qbf_to_game(grg::parse_qdimacs(in));
    } else if (a.kind == "cnf") {
        if (a.owner != "eve" && a.owner != "adam")
            throw CLI::ValidationError("--owner", "cnf reduction requires --owner eve|adam");
        reduced = grg::cnf_to_game(grg::parse_dimacs_cnf(in),
                                   a.owner == "eve" ? grg::Player::Eve : grg::Player::Adam);
    } else if (a.kind == "st-reach") {
        grg::Digraph h = grg::parse_edge_graph(in);
        if (a.source < 1 || a.sink < 1)
            throw CLI::ValidationError("--source/--sink",
                                       "st-reach requires 1-based --source and --sink");
        reduced = grg::streach_to_game(h, a.source - 1, a.sink - 1);
    } else {
        reduced = grg::vertex_cover_to_game(grg::as_undirected(grg::parse_edge_graph(in)));
    }
    std::string out = grg::serialize_game(reduced.game, reduced.meta.labels);
    if (a.output.empty()) {
        std::cout << out;
    } else {
        std::ofstream of(a.output, std::ios::binary);
        of << out;
    }
    return 0;
}

struct GenArgs {
    int vertices = 0;
    long long edges = -1;
    int targets = 0;
    int large_sets = 0;
    int large_size = 2;
    uint64_t seed = 0;
    std::string profile = "two-player";
    std::string output;
};

int cmd_gen(const GenArgs& a) {
    grg::RandomGameParams p;
    p.vertices = a.vertices;
    p.edges = a.edges >= 0
                  ? a.edges
                  : std::min<long long>(2LL * a.vertices,
                                        static_cast<long long>(a.vertices) * a.vertices);
    p.singleton_count = a.targets;
    p.large_count = a.large_sets;
    p.large_size = a.large_size;
    p.seed = a.seed;
    p.profile = a.profile == "eve"    ? grg::PlayerProfile::OnlyEve
                : a.profile == "adam" ? grg::PlayerProfile::OnlyAdam
                                      : grg::PlayerProfile::TwoPlayer;
    std::string out = grg::serialize_game(grg::random_game(p));
    if (a.output.empty()) {
        std::cout << out;
    } else {
        std::ofstream of(a.output, std::ios::binary);
        of << out;
    }
    return 0;
}

struct BenchArgs {
    std::string dir;
    bool check = false;
    bool as_json = false;
    int jobs = 1;
};

int cmd_bench(const BenchArgs& a) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(a.dir))
        if (entry.is_regular_file() && entry.path().extension() == ".grg")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    struct Item {
        RunReport report;
        bool check_ok = true;
        grg::Player oracle{};
        int exit_code = 0;
        std::string error;
    };
    std::vector<Item> items(files.size());
    std::atomic<size_t> next{0};

    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= files.size()) return;
            Item& item = items[i];
            item.report.command = "bench";
            item.report.file = files[i];
            try {
                grg::GameSpec g = load_game(files[i], &item.report.digest);
                grg::SolveOptions opts;
                opts.memory_mb = memory_budget_mb();
                grg::SolveOutcome out;
                item.report.micros = timed_micros([&] { out = grg::solve(g, opts); });
                item.report.algo = out.algo;
                item.report.winner = out.winner;
                item.report.states = out.product_states;
                if (a.check) {
                    item.oracle = grg::oracle_genreach(g);
                    item.check_ok = item.oracle == out.winner;
                }
            } catch (const grg::BudgetError& e) {
                item.exit_code = kExitBudget;
                item.error = e.what();
            } catch (const grg::Error& e) {
                item.exit_code = kExitParse;
                item.error = e.what();
            }
        }
    };
    {
        std::vector<std::thread> pool;
        for (int j = 0; j < std::max(1, a.jobs); ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    long long total_micros = 0;
    int eve = 0, adam = 0, rc = 0;
    std::map<std::string, int> per_algo;
    for (const auto& item : items) {
        if (item.exit_code) {
            std::cerr << "error: " << item.report.file << ": " << item.error << "\n";
            rc = std::max(rc, item.exit_code);
            continue;
        }
        total_micros += item.report.micros;
        ++per_algo[item.report.algo];
        (*item.report.winner == grg::Player::Eve ? eve : adam) += 1;
        if (a.as_json) {
            emit_report(item.report, true, std::cout);
        } else {
            std::cout << item.report.file << " algo=" << item.report.algo
                      << " winner=" << player_name(*item.report.winner)
                      << " micros=" << item.report.micros << " states=" << item.report.states;
            if (a.check) std::cout << " check=" << (item.check_ok ? "ok" : "mismatch");
            std::cout << "\n";
        }
        if (a.check && !item.check_ok) rc = std::max(rc, kExitCheckFailed);
    }
    if (a.as_json) {
        json summary{{"command", "bench"},
                     {"files", files.size()},
                     {"eve", eve},
                     {"adam", adam},
                     {"micros", total_micros}};
        json algos;
        for (const auto& [name, count] : per_algo) algos[name] = count;
        summary["algos"] = algos;
        std::cout << summary.dump() << "\n";
    } else {
        std::cout << "bench files " << files.size() << " eve " << eve << " adam " << adam
                  << " micros " << total_micros << "\n";
        for (const auto& [name, count] : per_algo)
            std::cout << "bench algo " << name << " " << count << "\n";
    }
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalised reachability game solver"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "decide the winner of a game file");
    solve->add_option("file", solve_args.file, "grg game file")->required();
    solve->add_option("--algo", solve_args.algo, "solver selection")
        ->check(CLI::IsMember({"auto", "product", "chain", "one-large", "fpt", "adam"}));
    solve->add_option("--start-mask", solve_args.start_mask, "visited-mask seeding at the start")
        ->check(CLI::IsMember({"seeded", "empty"}));
    solve->add_flag("--check", solve_args.check, "cross-check against the oracle");
    solve->add_flag("--json", solve_args.as_json, "machine-readable output");
    solve->add_flag("--full-witness", solve_args.full_witness, "do not truncate witnesses");

    ValueArgs max_args, promise_args;
    auto* maxc = app.add_subcommand("max", "maximum number of target sets Eve can force");
    maxc->add_option("file", max_args.file)->required();
    maxc->add_option("--k", max_args.k, "decision mode: exit 1 unless value >= k");
    maxc->add_flag("--check", max_args.check);
    maxc->add_flag("--json", max_args.as_json);
    maxc->add_flag("--full-witness", max_args.full_witness);
    auto* promise = app.add_subcommand("promise", "largest target subset Eve can pledge");
    promise->add_option("file", promise_args.file)->required();
    promise->add_option("--k", promise_args.k, "decision mode: exit 1 unless value >= k");
    promise->add_flag("--check", promise_args.check);
    promise->add_flag("--json", promise_args.as_json);
    promise->add_flag("--full-witness", promise_args.full_witness);

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "brute-force reference answers");
    oracle->add_option("file", oracle_args.file)->required();
    oracle->add_option("--problem", oracle_args.problem)
        ->check(CLI::IsMember({"genreach", "max", "promise"}));
    oracle->add_option("--max-vertices", oracle_args.max_vertices);
    oracle->add_option("--max-targets", oracle_args.max_targets);
    oracle->add_flag("--json", oracle_args.as_json);

    ReduceArgs reduce_args;
    auto* reduce = app.add_subcommand("reduce", "translate an instance into a game file");
    reduce->add_option("kind", reduce_args.kind)
        ->required()
        ->check(CLI::IsMember({"qbf", "cnf", "st-reach", "vertex-cover"}));
    reduce->add_option("input", reduce_args.input)->required();
    reduce->add_option("-o,--output", reduce_args.output, "write to file instead of stdout");
    reduce->add_option("--owner", reduce_args.owner, "cnf: player owning every chooser")
        ->check(CLI::IsMember({"eve", "adam"}));
    reduce->add_option("--source", reduce_args.source, "st-reach: 1-based source vertex");
    reduce->add_option("--sink", reduce_args.sink, "st-reach: 1-based sink vertex");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "seeded random game");
    gen->add_option("--vertices", gen_args.vertices)->required();
    gen->add_option("--edges", gen_args.edges);
    gen->add_option("--targets", gen_args.targets, "singleton target count");
    gen->add_option("--large-sets", gen_args.large_sets);
    gen->add_option("--large-size", gen_args.large_size);
    gen->add_option("--seed", gen_args.seed)->required();
    gen->add_option("--profile", gen_args.profile)
        ->check(CLI::IsMember({"two-player", "eve", "adam"}));
    gen->add_option("-o,--output", gen_args.output);

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "solve every .grg file in a directory");
    bench->add_option("dir", bench_args.dir)->required();
    bench->add_flag("--check", bench_args.check);
    bench->add_flag("--json", bench_args.as_json);
    bench->add_option("--jobs", bench_args.jobs, "solve files concurrently");

    try {
        app.parse(argc, argv);
        if (solve->parsed()) return cmd_solve(solve_args);
        if (maxc->parsed()) return cmd_value("max", max_args);
        if (promise->parsed()) return cmd_value("promise", promise_args);
        if (oracle->parsed()) return cmd_oracle(oracle_args);
        if (reduce->parsed()) return cmd_reduce(reduce_args);
        if (gen->parsed()) return cmd_gen(gen_args);
        if (bench->parsed()) return cmd_bench(bench_args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitParse : 0;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const grg::WrongClass& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitWrongClass;
    } catch (const grg::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const grg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
