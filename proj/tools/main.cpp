// Command-line interface for the seat arrangement solvers.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "seatarr/seatarr.hpp"

namespace {

using namespace seatarr;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file '" + path + "'");
    out << text;
}

SeatGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file '" + path + "'");
    Json j = Json::parse(in);
    std::vector<std::pair<int, int>> edges;
    for (const Json& e : j.at("edges")) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    return SeatGraph(j.at("n").get<int>(), edges);
}

struct SolveArgs {
    std::string problem;
    std::string input;
    std::string algorithm = "auto";
    std::uint64_t seed = 1;
    double delta = 1e-6;
    std::optional<std::string> threshold;
    std::uint64_t oracle_cap = 100'000'000;
    std::uint64_t trial_cap = 100'000'000;
    int partition_cap = 10;
    int threads = 1;
};

int cmd_solve(const SolveArgs& args) {
    NamedInstance named = load_instance_file(args.input);
    SolverConfig config;
    config.algorithm = parse_algorithm(args.algorithm);
    config.seed = args.seed;
    config.delta = args.delta;
    config.oracle_cap = args.oracle_cap;
    config.trial_cap = args.trial_cap;
    config.partition_cap = args.partition_cap;
    config.threads = args.threads;
    Problem problem = parse_problem(args.problem);

    auto start = Clock::now();
    SolveOutcome out = solve(problem, named.instance, config);
    std::cout << serialize_outcome(out, ms_since(start));

    if (args.threshold) {
        if (!out.value)
            throw std::invalid_argument("--threshold applies only to mwa and mua");
        Rational L = Rational::parse(*args.threshold);
        return *out.value >= L ? 0 : 1;
    }
    return 0;
}

int cmd_check(const std::string& input, const std::string& arrangement_path,
              const std::string& concept_name) {
    NamedInstance named = load_instance_file(input);
    Arrangement arr = load_arrangement_file(arrangement_path, named.instance.agent_count());
    Json j;
    j["concept"] = concept_name;
    if (concept_name == "ef" || concept_name == "es") {
        Verdict v = concept_name == "ef" ? check_envy_free(named.instance, arr)
                                         : check_exchange_stable(named.instance, arr);
        j[concept_name == "ef" ? "envy_free" : "exchange_stable"] = v.ok;
        if (v.witness) {
            Json w;
            w["p"] = v.witness->first;
            w["q"] = v.witness->second;
            j["witness"] = std::move(w);
        }
    } else if (concept_name == "welfare") {
        j["value"] = welfare(named.instance, arr).str();
    } else if (concept_name == "egal") {
        j["value"] = egalitarian(named.instance, arr).str();
    } else {
        throw std::invalid_argument("unknown concept '" + concept_name + "' (ef|es|welfare|egal)");
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct GenerateArgs {
    std::string kind;
    std::string out = "-";
    int n = 6;
    std::string seat_class = "path";
    int k = 4;
    std::string pref_class = "general";
    int delta_cap = 2;
    int weight_range = 5;
    std::uint64_t seed = 1;
    std::string graph_file;
    int h = 1;
};

int cmd_generate(const GenerateArgs& args) {
    GeneratedInstance gen = [&] {
        if (args.kind == "figure1") return gen_figure1();
        if (args.kind == "random") {
            GeneratorSpec spec;
            spec.n = args.n;
            spec.seat_class = parse_seat_class(args.seat_class);
            spec.k = args.k;
            spec.pref_class = parse_pref_class(args.pref_class);
            spec.delta_cap = args.delta_cap;
            spec.weight_range = args.weight_range;
            spec.seed = args.seed;
            return gen_random(spec);
        }
        if (args.kind == "clique_to_mwa" || args.kind == "is_to_esa" ||
            args.kind == "ham_to_mwa") {
            if (args.graph_file.empty())
                throw std::invalid_argument("reduction generators need --graph");
            SeatGraph source = load_graph_file(args.graph_file);
            if (args.kind == "clique_to_mwa") return gen_clique_to_mwa(source, args.h);
            if (args.kind == "is_to_esa") return gen_is_to_esa(source, args.h);
            return gen_ham_to_mwa(source);
        }
        throw std::invalid_argument("unknown generator kind '" + args.kind + "'");
    }();
    write_text(args.out, serialize_instance(to_named(std::move(gen))));
    return 0;
}

int cmd_classify(const std::string& input) {
    NamedInstance named = load_instance_file(input);
    SeatGraphAnalysis seats = analyze_seats(named.instance.seats);
    PreferenceAnalysis prefs = analyze_preferences(named.instance.profile);
    Json j;
    j["k"] = seats.k;
    j["delta_plus"] = prefs.delta_plus;
    Json classes = Json::array();
    for (SeatClass c : seats.classes) classes.push_back(seat_class_name(c));
    j["classes"] = std::move(classes);
    Json p;
    p["binary"] = prefs.binary;
    p["non_negative"] = prefs.non_negative;
    p["positive"] = prefs.positive;
    p["symmetric"] = prefs.symmetric;
    p["strict"] = prefs.strict;
    j["preferences"] = std::move(p);
    std::cout << j.dump(2) << "\n";
    return 0;
}

std::string outcome_answer(const SolveOutcome& out) {
    if (out.value) return out.value->str();
    if (out.exists) return *out.exists ? "exists" : "not-exists";
    return "?";
}

int cmd_bench(const std::string& suite_dir, const std::string& out_dir, std::uint64_t seed) {
    fs::create_directories(out_dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(suite_dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    Json rows = Json::array();
    std::ofstream csv(fs::path(out_dir) / "bench.csv");
    csv << "instance,problem,algorithm,answer,wall_ms,oracle_answer,oracle_ms,match\n";
    for (const fs::path& file : files) {
        NamedInstance named = load_instance_file(file.string());
        for (Problem problem : {Problem::MWA, Problem::MUA, Problem::EFA, Problem::ESA}) {
            SolverConfig config;
            config.seed = seed;
            auto start = Clock::now();
            SolveOutcome fast = solve(problem, named.instance, config);
            long long fast_ms = ms_since(start);

            SolverConfig oracle_config = config;
            oracle_config.algorithm = Algorithm::Oracle;
            std::string oracle_answer = "skipped";
            long long oracle_ms = -1;
            bool match = true;
            try {
                start = Clock::now();
                SolveOutcome exact = oracle_solve(problem, named.instance, oracle_config);
                oracle_ms = ms_since(start);
                oracle_answer = outcome_answer(exact);
                match = outcome_answer(fast) == oracle_answer;
            } catch (const ResourceLimitError&) {
            }

            csv << file.filename().string() << "," << problem_name(problem) << ","
                << fast.algorithm << "," << outcome_answer(fast) << "," << fast_ms << ","
                << oracle_answer << "," << oracle_ms << "," << (match ? "yes" : "no") << "\n";
            Json row;
            row["instance"] = file.filename().string();
            row["problem"] = problem_name(problem);
            row["algorithm"] = fast.algorithm;
            row["answer"] = outcome_answer(fast);
            row["wall_ms"] = fast_ms;
            row["oracle_answer"] = oracle_answer;
            row["oracle_ms"] = oracle_ms;
            row["match"] = match;
            rows.push_back(std::move(row));
        }
    }
    std::ofstream json_out(fs::path(out_dir) / "bench.json");
    json_out << rows.dump(2) << "\n";
    return 0;
}

void emit_error(const char* kind, const std::string& message) {
    Json j;
    j["error"] = Json{{"kind", kind}, {"message", message}};
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seat arrangement solvers: welfare/maxmin optimization and "
                 "envy-freeness/exchange-stability decisions on seat graphs"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one problem on an instance file");
    solve_cmd->add_option("--problem", solve_args.problem, "mwa|mua|efa|esa")->required();
    solve_cmd->add_option("--input", solve_args.input, "instance JSON file")->required();
    solve_cmd->add_option("--algorithm", solve_args.algorithm, "auto, oracle, or a solver name");
    solve_cmd->add_option("--seed", solve_args.seed, "master seed");
    solve_cmd->add_option("--delta", solve_args.delta, "Monte Carlo miss probability");
    solve_cmd->add_option("--threshold", solve_args.threshold,
                          "decision threshold L; exit 0 iff value >= L");
    solve_cmd->add_option("--oracle-cap", solve_args.oracle_cap, "max oracle enumerations");
    solve_cmd->add_option("--trial-cap", solve_args.trial_cap, "max Monte Carlo trials");
    solve_cmd->add_option("--partition-cap", solve_args.partition_cap,
                          "max k for partition enumeration");
    solve_cmd->add_option("--threads", solve_args.threads, "oracle worker threads");

    std::string check_input, check_arrangement, check_concept;
    CLI::App* check_cmd = app.add_subcommand("check", "Evaluate an arrangement");
    check_cmd->add_option("--input", check_input, "instance JSON file")->required();
    check_cmd->add_option("--arrangement", check_arrangement, "arrangement JSON file")->required();
    check_cmd->add_option("--concept", check_concept, "ef|es|welfare|egal")->required();

    GenerateArgs gen_args;
    CLI::App* gen_cmd = app.add_subcommand("generate", "Emit an instance file");
    gen_cmd->add_option("--kind", gen_args.kind,
                        "figure1|random|clique_to_mwa|is_to_esa|ham_to_mwa")
        ->required();
    gen_cmd->add_option("--out", gen_args.out, "output path ('-' for stdout)");
    gen_cmd->add_option("--n", gen_args.n, "agent count (random)");
    gen_cmd->add_option("--seat-class", gen_args.seat_class,
                        "clique|stars|path|cycle|matching|general (random)");
    gen_cmd->add_option("--k", gen_args.k, "non-isolated seats (random)");
    gen_cmd->add_option("--pref-class", gen_args.pref_class, "preference class (random)");
    gen_cmd->add_option("--delta-cap", gen_args.delta_cap, "max out-degree (random)");
    gen_cmd->add_option("--weight-range", gen_args.weight_range, "weight magnitude bound (random)");
    gen_cmd->add_option("--seed", gen_args.seed, "generator seed (random)");
    gen_cmd->add_option("--graph", gen_args.graph_file, "source graph JSON (reductions)");
    gen_cmd->add_option("--h", gen_args.h, "solution size parameter (reductions)");

    std::string classify_input;
    CLI::App* classify_cmd = app.add_subcommand("classify", "Report k, delta+, and classes");
    classify_cmd->add_option("--input", classify_input, "instance JSON file")->required();

    std::string bench_suite, bench_out;
    std::uint64_t bench_seed = 1;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Compare oracle vs dispatched solvers");
    bench_cmd->add_option("--suite", bench_suite, "directory of instance JSON files")->required();
    bench_cmd->add_option("--out", bench_out, "output directory")->required();
    bench_cmd->add_option("--seed", bench_seed, "master seed");

    try {
        app.parse(argc, argv);
        if (solve_cmd->parsed()) return cmd_solve(solve_args);
        if (check_cmd->parsed()) return cmd_check(check_input, check_arrangement, check_concept);
        if (gen_cmd->parsed()) return cmd_generate(gen_args);
        if (classify_cmd->parsed()) return cmd_classify(classify_input);
        if (bench_cmd->parsed()) return cmd_bench(bench_suite, bench_out, bench_seed);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        emit_error("argument", e.what());
        return 2;
    } catch (const ResourceLimitError& e) {
        emit_error("resource", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        emit_error("argument", e.what());
        return 2;
    } catch (const Json::exception& e) {
        emit_error("argument", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 4;
    }
}
