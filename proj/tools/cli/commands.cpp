#include <cli/commands.hpp>

#include <cli/experiments.hpp>
#include <cli/manifest.hpp>

#include <dircomm/baselines.hpp>
#include <dircomm/benchmark.hpp>
#include <dircomm/evaluation.hpp>
#include <dircomm/extraction.hpp>
#include <dircomm/parallel.hpp>
#include <dircomm/random.hpp>
#include <dircomm/report.hpp>
#include <dircomm/version.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace dircomm::cli {

namespace {

namespace fs = std::filesystem;

/// Bad input that is the caller's fault; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ChainOptions {
    double c = 0.1;
    double warmup = 0.3;
    std::size_t restarts = 3;
    std::size_t max_steps = 0;
    std::size_t patience = 0;
    bool hastings = false;
};

struct NullOptions {
    std::string model = "same_edge_count";
    std::size_t replicates = 100;
    double quantile = 0.95;
    std::size_t max_communities = 10;
};

void add_chain_options(CLI::App *app, ChainOptions &o) {
    app->add_option("--c", o.c, "Inverse temperature of the chain");
    app->add_option("--warmup", o.warmup,
                    "Fraction of the step budget over which the penalty exponent ramps up");
    app->add_option("--restarts", o.restarts, "Independent chains per search, best kept");
    app->add_option("--max-steps", o.max_steps, "Steps per chain (0 = 200 N)");
    app->add_option("--patience", o.patience,
                    "Steps without improvement before stopping (0 = 20 N)");
    app->add_flag("--hastings", o.hastings, "Correct the acceptance for closure size changes");
}

void add_null_options(CLI::App *app, NullOptions &o) {
    app->add_option("--null-model", o.model, "same_edge_count or degree_preserving")
        ->check(CLI::IsMember({"same_edge_count", "degree_preserving"}));
    app->add_option("--null-replicates", o.replicates, "Randomized graphs per significance test");
    app->add_option("--quantile", o.quantile, "Significance quantile of the null distribution");
    app->add_option("--max-communities", o.max_communities, "Stop after this many communities");
}

ExtractionConfig build_extraction(const ChainOptions &chain, const NullOptions &nulls,
                                  double rho, double n, std::uint64_t seed, std::size_t jobs) {
    ExtractionConfig config;
    config.criterion.rho = rho;
    config.criterion.n = n;
    config.chain.c = chain.c;
    config.chain.penalty_warmup = chain.warmup;
    config.chain.max_steps = chain.max_steps;
    config.chain.patience = chain.patience;
    config.chain.hastings_corrected = chain.hastings;
    config.restarts = chain.restarts;
    config.null_model = *parse_null_model(nulls.model);
    config.null_replicates = nulls.replicates;
    config.significance_quantile = nulls.quantile;
    config.max_communities = nulls.max_communities;
    config.seed = seed;
    config.jobs = jobs;
    config.validate();
    return config;
}

void echo_parameters(const CLI::App *app, Manifest &manifest) {
    for (const CLI::Option *opt : app->get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help")
            continue;
        std::string value;
        if (opt->count() > 0) {
            for (const auto &r : opt->results())
                value += (value.empty() ? "" : ",") + r;
        } else {
            value = opt->get_default_str();
        }
        manifest.param(name, value);
    }
}

DirectedGraph load_graph(const std::string &path, bool undirected) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec))
        throw UsageError("cannot read graph file '" + path + "'");
    return load_edge_list(path, !undirected);
}

std::ofstream open_output(const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

// ---------------------------------------------------------------- extract

struct ExtractArgs {
    std::string graph;
    bool undirected = false;
    std::string method = "dce";
    double rho = 0.8;
    double n = 5.0;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    std::size_t parts = 3;
    std::string out;
    ChainOptions chain;
    NullOptions nulls;
};

void add_extract(CLI::App &app, ExtractArgs &a) {
    auto *sub = app.add_subcommand("extract", "Extract communities from an edge list");
    sub->add_option("--graph", a.graph, "Edge list: src dst [weight] per line")->required();
    sub->add_flag("--undirected", a.undirected, "Read each line as an undirected link");
    sub->add_option("--method", a.method, "dce, uce or dmm")
        ->check(CLI::IsMember({"dce", "uce", "dmm"}));
    sub->add_option("--rho", a.rho, "Effective complement fraction");
    sub->add_option("--n", a.n, "Direction penalty exponent");
    sub->add_option("--seed", a.seed, "Master seed");
    sub->add_option("--jobs", a.jobs, "Concurrent null replicates");
    sub->add_option("--parts", a.parts, "Target number of parts for dmm");
    sub->add_option("--out", a.out, "Report (JSON) or label file for dmm")->required();
    add_chain_options(sub, a.chain);
    add_null_options(sub, a.nulls);
}

int cmd_extract(const CLI::App *sub, const ExtractArgs &a, std::ostream &out) {
    const Method method = *parse_method(a.method);
    ExtractionConfig config = build_extraction(a.chain, a.nulls, a.rho, a.n, a.seed, a.jobs);
    DmmConfig dmm;
    dmm.target_parts = a.parts;
    dmm.validate();

    Manifest manifest("extract", a.seed);
    echo_parameters(sub, manifest);
    manifest.phase("load");
    const DirectedGraph g = load_graph(a.graph, a.undirected);

    manifest.phase("detect");
    if (method == Method::dmm) {
        const DmmResult result = run_dmm(g, dmm);
        manifest.phase("write");
        auto file = open_output(a.out);
        write_assignment(g, result.partition.assignment, file);
        out << "dmm: " << result.partition.part_count() << " parts, Q = "
            << format_number(result.modularity) << '\n';
    } else {
        const ExtractionReport report =
            method == Method::uce ? run_uce(g, config) : extract_all(g, config);
        manifest.phase("write");
        auto file = open_output(a.out);
        write_report_json(file, report, g, config, a.method);
        out << a.method << ": " << report.communities.size() << " communities (stopped: "
            << to_string(report.stopped_reason) << ")\n";
    }
    manifest.output(a.out);
    manifest.write(a.out + ".manifest.json");
    return success;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
    std::string graph;
    bool undirected = false;
    std::string truth;
    std::string found;
};

void add_evaluate(CLI::App &app, EvaluateArgs &a) {
    auto *sub = app.add_subcommand(
        "evaluate", "Adjusted Jaccard of a report or label file against planted communities");
    sub->add_option("--graph", a.graph, "Edge list the result was computed on")->required();
    sub->add_flag("--undirected", a.undirected, "Read each line as an undirected link");
    sub->add_option("--truth", a.truth, "Label file with ids 1 (sink) and 2 (source)")->required();
    sub->add_option("--found", a.found, "Extraction report (JSON) or label file")->required();
}

std::vector<std::vector<NodeId>> read_found(const std::string &path, const DirectedGraph &g) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    const int first = (in >> std::ws).peek();
    if (first != '{')
        return PartitionLabels{read_assignment(in, g)}.groups();
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw UsageError("malformed report '" + path + "': " + e.what());
    }
    std::vector<std::vector<NodeId>> groups;
    for (const auto &community : doc.at("communities")) {
        std::vector<NodeId> members;
        for (const auto &label : community.at("members")) {
            const auto id = g.find(label.get<std::string>());
            if (!id)
                throw UsageError("report member '" + label.get<std::string>() +
                                 "' is not in the graph");
            members.push_back(*id);
        }
        groups.push_back(std::move(members));
    }
    return groups;
}

int cmd_evaluate(const EvaluateArgs &a, std::ostream &out) {
    const DirectedGraph g = load_graph(a.graph, a.undirected);
    std::ifstream truth_in(a.truth);
    if (!truth_in)
        throw UsageError("cannot read truth file '" + a.truth + "'");
    const auto truth = PartitionLabels{read_assignment(truth_in, g)};
    std::vector<NodeId> s1, s2;
    for (NodeId u = 0; u < truth.assignment.size(); ++u) {
        if (truth.assignment[u] == 1)
            s1.push_back(u);
        else if (truth.assignment[u] == 2)
            s2.push_back(u);
    }
    const auto found = read_found(a.found, g);
    const PairMatch match = best_pair(s1, s2, found);
    out << "adjusted_jaccard," << format_number(match.score) << '\n';
    return success;
}

// ---------------------------------------------------------------- benchmark

struct BenchmarkArgs {
    BenchmarkSpec spec;
    std::size_t replicates = 1;
    std::size_t jobs = 1;
    std::string out;
};

void add_benchmark_spec(CLI::App *sub, BenchmarkSpec &spec) {
    sub->add_option("--n1", spec.n1, "Sink community size");
    sub->add_option("--n2", spec.n2, "Source community size");
    sub->add_option("--n0", spec.n0, "Background size");
    sub->add_option("--p1", spec.p1, "Link probability inside the planted pair");
    sub->add_option("--p2", spec.p2, "Link probability everywhere else");
    sub->add_flag("--figure1", spec.figure1_variant, "Sources first, then sinks, then background");
}

void add_benchmark(CLI::App &app, BenchmarkArgs &a) {
    auto *sub = app.add_subcommand("benchmark", "Generate planted sink/source benchmarks");
    add_benchmark_spec(sub, a.spec);
    sub->add_option("--seed", a.spec.seed, "Master seed; replicate i uses derive_seed(seed, i)");
    sub->add_option("--replicates", a.replicates, "Number of graph/truth pairs");
    sub->add_option("--jobs", a.jobs, "Concurrent generators");
    sub->add_option("--out", a.out, "Output directory")->required();
}

std::string numbered(const char *prefix, std::size_t i, const char *suffix) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%04zu%s", prefix, i, suffix);
    return buf;
}

int cmd_benchmark(const CLI::App *sub, const BenchmarkArgs &a, std::ostream &out) {
    a.spec.validate();
    Manifest manifest("benchmark", a.spec.seed);
    echo_parameters(sub, manifest);

    const fs::path dir(a.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw std::runtime_error("cannot create directory '" + a.out + "'");

    manifest.phase("generate");
    std::vector<std::optional<Benchmark>> made(a.replicates);
    parallel_for(a.replicates, a.jobs, [&](std::size_t i) {
        BenchmarkSpec spec = a.spec;
        spec.seed = derive_seed(a.spec.seed, i);
        made[i] = generate(spec);
    });

    manifest.phase("write");
    for (std::size_t i = 0; i < a.replicates; ++i) {
        const fs::path graph_path = dir / numbered("graph_", i, ".edges");
        const fs::path truth_path = dir / numbered("truth_", i, ".txt");
        auto graph_file = open_output(graph_path.string());
        write_edge_list(made[i]->graph, graph_file);
        auto truth_file = open_output(truth_path.string());
        write_assignment(made[i]->graph, made[i]->truth.assignment(), truth_file);
        if (!graph_file || !truth_file)
            throw std::runtime_error("write failed in '" + a.out + "'");
        manifest.output(graph_path.filename().string());
        manifest.output(truth_path.filename().string());
    }
    manifest.write((dir / "manifest.json").string());
    out << "wrote " << a.replicates << " graph/truth pairs to " << a.out << '\n';
    return success;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    std::vector<double> rhos{0.8};
    std::vector<double> ns{5.0};
    std::vector<double> p1s{0.7};
    std::vector<double> p2s{0.05};
    std::vector<std::string> methods{"dce", "uce", "dmm"};
    std::size_t replicates = 20;
    BenchmarkSpec spec;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    std::size_t parts = 3;
    std::string out;
    ChainOptions chain;
    NullOptions nulls{.max_communities = 2};
};

void add_sweep(CLI::App &app, SweepArgs &a) {
    auto *sub = app.add_subcommand(
        "sweep", "Generate, detect and evaluate over a parameter grid (comma-separated lists)");
    sub->add_option("--rho", a.rhos, "Values of rho")->delimiter(',');
    sub->add_option("--n", a.ns, "Values of the penalty exponent")->delimiter(',');
    sub->add_option("--p1", a.p1s, "Values of p1")->delimiter(',');
    sub->add_option("--p2", a.p2s, "Values of p2")->delimiter(',');
    sub->add_option("--methods", a.methods, "Subset of dce,uce,dmm")
        ->delimiter(',')
        ->check(CLI::IsMember({"dce", "uce", "dmm"}));
    sub->add_option("--replicates", a.replicates, "Graphs per (p1, p2) pair");
    sub->add_option("--n1", a.spec.n1, "Sink community size");
    sub->add_option("--n2", a.spec.n2, "Source community size");
    sub->add_option("--n0", a.spec.n0, "Background size");
    sub->add_flag("--figure1", a.spec.figure1_variant, "Sources first, then sinks, then background");
    sub->add_option("--seed", a.seed, "Master seed");
    sub->add_option("--jobs", a.jobs, "Concurrent rows");
    sub->add_option("--parts", a.parts, "Target number of parts for dmm");
    sub->add_option("--out", a.out, "Per-replicate CSV; the summary goes next to it")->required();
    add_chain_options(sub, a.chain);
    add_null_options(sub, a.nulls);
}

int cmd_sweep(const CLI::App *sub, const SweepArgs &a, std::ostream &out) {
    SweepGrid grid;
    grid.rhos = a.rhos;
    grid.ns = a.ns;
    grid.p1s = a.p1s;
    grid.p2s = a.p2s;
    grid.methods.clear();
    for (const auto &m : a.methods)
        grid.methods.push_back(*parse_method(m));
    grid.replicates = a.replicates;
    grid.base = a.spec;
    grid.extraction = build_extraction(a.chain, a.nulls, a.rhos.front(), a.ns.front(), a.seed, 1);
    grid.dmm.target_parts = a.parts;
    grid.seed = a.seed;
    grid.jobs = a.jobs;
    grid.validate();

    Manifest manifest("sweep", a.seed);
    echo_parameters(sub, manifest);
    manifest.note("csv_schema_version", std::to_string(csv_schema_version));
    manifest.phase("sweep");
    const auto rows = run_sweep(grid);
    const auto summary = summarize(rows);

    manifest.phase("write");
    const std::string summary_file = summary_path(a.out);
    {
        auto file = open_output(a.out);
        write_sweep_csv(file, rows);
        auto sfile = open_output(summary_file);
        write_summary_csv(sfile, summary);
    }
    manifest.output(a.out);
    manifest.output(summary_file);
    manifest.write(a.out + ".manifest.json");
    write_summary_csv(out, summary);
    return success;
}

// ---------------------------------------------------------------- scaling

struct ScalingArgs {
    ScalingConfig config;
    double rho = 0.8;
    double n = 5.0;
    std::string out;
    ChainOptions chain{.restarts = 1};
};

void add_scaling(CLI::App &app, ScalingArgs &a) {
    auto *sub = app.add_subcommand("scaling", "Time one community search across graph sizes");
    sub->add_option("--sizes", a.config.sizes, "Comma-separated node counts")->delimiter(',');
    sub->add_option("--replicates", a.config.replicates, "Graphs per size");
    sub->add_option("--seed", a.config.seed, "Master seed");
    sub->add_option("--degree", a.config.mean_degree, "Mean background degree");
    sub->add_option("--n1", a.config.n1, "Sink community size");
    sub->add_option("--n2", a.config.n2, "Source community size");
    sub->add_option("--p1", a.config.p1, "Link probability inside the planted pair");
    sub->add_option("--rho", a.rho, "Effective complement fraction");
    sub->add_option("--n", a.n, "Direction penalty exponent");
    sub->add_option("--out", a.out, "CSV with one row per size")->required();
    add_chain_options(sub, a.chain);
}

int cmd_scaling(const CLI::App *sub, const ScalingArgs &a, std::ostream &out) {
    ScalingConfig config = a.config;
    config.extraction = build_extraction(a.chain, NullOptions{}, a.rho, a.n, a.config.seed, 1);
    config.validate();

    Manifest manifest("scaling", config.seed);
    echo_parameters(sub, manifest);
    manifest.note("csv_schema_version", std::to_string(csv_schema_version));
    manifest.phase("scaling");
    const auto rows = run_scaling(config);
    const double exponent = fit_exponent(rows);
    manifest.note("fitted_exponent", format_number(exponent));

    manifest.phase("write");
    {
        auto file = open_output(a.out);
        write_scaling_csv(file, rows);
    }
    manifest.output(a.out);
    manifest.write(a.out + ".manifest.json");
    write_scaling_csv(out, rows);
    out << "fitted_exponent," << format_number(exponent) << '\n';
    return success;
}

} // namespace

std::string summary_path(const std::string &csv_path) {
    const std::string ext = ".csv";
    if (csv_path.size() > ext.size() &&
        csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0)
        return csv_path.substr(0, csv_path.size() - ext.size()) + ".summary.csv";
    return csv_path + ".summary.csv";
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Directed local community extraction"};
    app.name("dircomm");
    app.set_version_flag("--version", version);
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    ExtractArgs extract_args;
    EvaluateArgs evaluate_args;
    BenchmarkArgs benchmark_args;
    SweepArgs sweep_args;
    ScalingArgs scaling_args;
    add_extract(app, extract_args);
    add_evaluate(app, evaluate_args);
    add_benchmark(app, benchmark_args);
    add_sweep(app, sweep_args);
    add_scaling(app, scaling_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? success : usage_error;
    }

    try {
        const CLI::App *sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "extract")
            return cmd_extract(sub, extract_args, out);
        if (name == "evaluate")
            return cmd_evaluate(evaluate_args, out);
        if (name == "benchmark")
            return cmd_benchmark(sub, benchmark_args, out);
        if (name == "sweep")
            return cmd_sweep(sub, sweep_args, out);
        return cmd_scaling(sub, scaling_args, out);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return runtime_failure;
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv;
    argv.push_back("dircomm");
    for (const auto &a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace dircomm::cli
