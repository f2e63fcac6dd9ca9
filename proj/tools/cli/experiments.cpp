#include <cli/experiments.hpp>

#include <dircomm/parallel.hpp>
#include <dircomm/random.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace dircomm::cli {

std::string_view to_string(Method method) noexcept {
    switch (method) {
    case Method::dce:
        return "dce";
    case Method::uce:
        return "uce";
    case Method::dmm:
        return "dmm";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view text) noexcept {
    if (text == "dce")
        return Method::dce;
    if (text == "uce")
        return Method::uce;
    if (text == "dmm")
        return Method::dmm;
    return std::nullopt;
}

std::string format_number(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double score_against_truth(const GroundTruth &truth,
                           const std::vector<std::vector<NodeId>> &found) {
    const auto s1 = truth.sink();
    const auto s2 = truth.source();
    return best_pair(s1, s2, found).score;
}

std::vector<std::vector<NodeId>> detect(const DirectedGraph &g, Method method,
                                        const ExtractionConfig &extraction, const DmmConfig &dmm) {
    std::vector<std::vector<NodeId>> found;
    if (method == Method::dmm) {
        found = run_dmm(g, dmm).partition.groups();
        return found;
    }
    const ExtractionReport report =
        method == Method::uce ? run_uce(g, extraction) : extract_all(g, extraction);
    for (const auto &community : report.communities)
        found.push_back(community.members);
    return found;
}

void SweepGrid::validate() const {
    if (rhos.empty() || ns.empty() || p1s.empty() || p2s.empty() || methods.empty())
        throw std::invalid_argument("every sweep axis needs at least one value");
    for (double p1 : p1s)
        for (double p2 : p2s) {
            BenchmarkSpec spec = base;
            spec.p1 = p1;
            spec.p2 = p2;
            spec.validate();
        }
    for (double rho : rhos)
        for (double n : ns) {
            ExtractionConfig config = extraction;
            config.criterion.rho = rho;
            config.criterion.n = n;
            config.validate();
        }
    dmm.validate();
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
        .count();
}

struct SweepTask {
    std::size_t pair = 0;
    std::size_t replicate = 0;
    std::size_t rho = 0;
    std::size_t n = 0;
    Method method = Method::dce;
};

} // namespace

std::vector<EvaluationRow> run_sweep(const SweepGrid &grid) {
    grid.validate();
    const std::size_t pairs = grid.p1s.size() * grid.p2s.size();

    // Graphs first; they are shared by every criterion setting and method.
    std::vector<std::optional<Benchmark>> graphs(pairs * grid.replicates);
    std::vector<std::string> graph_errors(graphs.size());
    parallel_for(graphs.size(), grid.jobs, [&](std::size_t i) {
        const std::size_t pair = i / grid.replicates;
        const std::size_t rep = i % grid.replicates;
        BenchmarkSpec spec = grid.base;
        spec.p1 = grid.p1s[pair / grid.p2s.size()];
        spec.p2 = grid.p2s[pair % grid.p2s.size()];
        spec.seed = derive_seed(grid.seed, pair, rep);
        try {
            graphs[i] = generate(spec);
        } catch (const std::exception &e) {
            graph_errors[i] = e.what();
        }
    });

    std::vector<SweepTask> tasks;
    for (std::size_t pair = 0; pair < pairs; ++pair)
        for (std::size_t ri = 0; ri < grid.rhos.size(); ++ri)
            for (std::size_t ni = 0; ni < grid.ns.size(); ++ni)
                for (Method method : grid.methods)
                    for (std::size_t rep = 0; rep < grid.replicates; ++rep)
                        tasks.push_back({pair, rep, ri, ni, method});

    // DMM ignores rho and n: run it once per graph and reuse the outcome.
    struct DmmOutcome {
        double score = 0.0;
        double runtime_ms = 0.0;
        std::string error;
    };
    std::vector<DmmOutcome> dmm_outcomes(graphs.size());
    const bool wants_dmm =
        std::find(grid.methods.begin(), grid.methods.end(), Method::dmm) != grid.methods.end();
    if (wants_dmm) {
        parallel_for(graphs.size(), grid.jobs, [&](std::size_t i) {
            if (!graphs[i])
                return;
            const auto start = std::chrono::steady_clock::now();
            try {
                const auto found = detect(graphs[i]->graph, Method::dmm, grid.extraction, grid.dmm);
                dmm_outcomes[i].score = score_against_truth(graphs[i]->truth, found);
            } catch (const std::exception &e) {
                dmm_outcomes[i].error = e.what();
            }
            dmm_outcomes[i].runtime_ms = elapsed_ms(start);
        });
    }

    std::vector<EvaluationRow> rows(tasks.size());
    parallel_for(tasks.size(), grid.jobs, [&](std::size_t t) {
        const SweepTask &task = tasks[t];
        const std::size_t gi = task.pair * grid.replicates + task.replicate;
        EvaluationRow &row = rows[t];
        row.seed = derive_seed(grid.seed, task.pair, task.replicate);
        row.method = std::string(to_string(task.method));
        row.rho = grid.rhos[task.rho];
        row.n = grid.ns[task.n];
        row.p1 = grid.p1s[task.pair / grid.p2s.size()];
        row.p2 = grid.p2s[task.pair % grid.p2s.size()];
        if (!graphs[gi]) {
            row.error = "generation failed: " + graph_errors[gi];
            return;
        }
        if (task.method == Method::dmm) {
            row.adjusted_jaccard = dmm_outcomes[gi].score;
            row.runtime_ms = dmm_outcomes[gi].runtime_ms;
            row.error = dmm_outcomes[gi].error;
            return;
        }
        ExtractionConfig config = grid.extraction;
        config.criterion.rho = row.rho;
        config.criterion.n = row.n;
        config.seed = derive_seed(grid.seed, task.pair, task.replicate, 1);
        config.jobs = 1;
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto found = detect(graphs[gi]->graph, task.method, config, grid.dmm);
            row.adjusted_jaccard = score_against_truth(graphs[gi]->truth, found);
        } catch (const std::exception &e) {
            row.error = e.what();
        }
        row.runtime_ms = elapsed_ms(start);
    });
    return rows;
}

std::vector<SweepSummaryRow> summarize(const std::vector<EvaluationRow> &rows) {
    using Key = std::tuple<std::string, double, double, double, double>;
    std::vector<Key> order;
    std::map<Key, std::vector<const EvaluationRow *>> groups;
    for (const auto &row : rows) {
        Key key{row.method, row.rho, row.n, row.p1, row.p2};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted)
            order.push_back(key);
        it->second.push_back(&row);
    }
    std::vector<SweepSummaryRow> out;
    for (const auto &key : order) {
        SweepSummaryRow s;
        std::tie(s.method, s.rho, s.n, s.p1, s.p2) = key;
        const auto &members = groups[key];
        s.replicates = members.size();
        double sum = 0.0, sum_sq = 0.0, time = 0.0;
        std::size_t ok = 0;
        for (const auto *row : members) {
            if (!row->error.empty()) {
                ++s.failures;
                continue;
            }
            ++ok;
            sum += row->adjusted_jaccard;
            sum_sq += row->adjusted_jaccard * row->adjusted_jaccard;
            time += row->runtime_ms;
        }
        if (ok > 0) {
            s.mean_adjusted_jaccard = sum / static_cast<double>(ok);
            s.mean_runtime_ms = time / static_cast<double>(ok);
        }
        if (ok > 1) {
            const double var = (sum_sq - sum * sum / static_cast<double>(ok)) /
                               static_cast<double>(ok - 1);
            s.sd_adjusted_jaccard = std::sqrt(std::max(0.0, var));
        }
        out.push_back(std::move(s));
    }
    return out;
}

void write_sweep_csv(std::ostream &out, const std::vector<EvaluationRow> &rows) {
    write_evaluation_header(out);
    for (const auto &row : rows)
        write_evaluation_row(out, row);
}

void write_summary_csv(std::ostream &out, const std::vector<SweepSummaryRow> &rows) {
    out << "method,rho,n,p1,p2,replicates,failures,mean_adjusted_jaccard,sd_adjusted_jaccard,"
           "mean_runtime_ms\n";
    for (const auto &r : rows)
        out << r.method << ',' << format_number(r.rho) << ',' << format_number(r.n) << ','
            << format_number(r.p1) << ',' << format_number(r.p2) << ',' << r.replicates << ','
            << r.failures << ',' << format_number(r.mean_adjusted_jaccard) << ','
            << format_number(r.sd_adjusted_jaccard) << ',' << format_number(r.mean_runtime_ms)
            << '\n';
}

void ScalingConfig::validate() const {
    if (sizes.empty())
        throw std::invalid_argument("at least one size is required");
    if (replicates == 0)
        throw std::invalid_argument("replicates must be >= 1");
    if (!(mean_degree >= 0.0))
        throw std::invalid_argument("mean degree must be >= 0");
    for (std::size_t size : sizes) {
        if (size < n1 + n2 + 2)
            throw std::invalid_argument("size " + std::to_string(size) +
                                        " leaves no room for the background");
        if (mean_degree / static_cast<double>(size - 1) > 1.0)
            throw std::invalid_argument("mean degree too large for size " + std::to_string(size));
    }
    extraction.validate();
}

std::vector<ScalingRow> run_scaling(const ScalingConfig &config) {
    config.validate();
    std::vector<ScalingRow> rows;
    for (std::size_t i = 0; i < config.sizes.size(); ++i) {
        const std::size_t size = config.sizes[i];
        ScalingRow row;
        row.size = size;
        row.replicates = config.replicates;
        row.min_runtime_ms = std::numeric_limits<double>::infinity();
        double sum_sq = 0.0;
        for (std::size_t r = 0; r < config.replicates; ++r) {
            BenchmarkSpec spec;
            spec.n1 = config.n1;
            spec.n2 = config.n2;
            spec.n0 = size - config.n1 - config.n2;
            spec.p1 = config.p1;
            spec.p2 = config.mean_degree / static_cast<double>(size - 1);
            spec.seed = derive_seed(config.seed, i, r);
            const Benchmark bench = generate(spec);

            const auto start = std::chrono::steady_clock::now();
            const ChainResult found =
                find_community(bench.graph, config.extraction, derive_seed(config.seed, i, r, 1));
            const double ms = elapsed_ms(start);

            const auto sink = bench.truth.sink();
            const auto source = bench.truth.source();
            row.mean_best_jaccard += std::max(jaccard(sink, found.best_members),
                                              jaccard(source, found.best_members));
            row.mean_community_size += static_cast<double>(found.best_members.size());
            row.mean_runtime_ms += ms;
            sum_sq += ms * ms;
            row.min_runtime_ms = std::min(row.min_runtime_ms, ms);
            row.max_runtime_ms = std::max(row.max_runtime_ms, ms);
        }
        const double k = static_cast<double>(config.replicates);
        row.mean_best_jaccard /= k;
        row.mean_community_size /= k;
        if (config.replicates > 1) {
            const double var = (sum_sq - row.mean_runtime_ms * row.mean_runtime_ms / k) / (k - 1.0);
            row.sd_runtime_ms = std::sqrt(std::max(0.0, var));
        }
        row.mean_runtime_ms /= k;
        rows.push_back(row);
    }
    return rows;
}

double fit_exponent(const std::vector<ScalingRow> &rows) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (const auto &row : rows) {
        if (row.size == 0 || !(row.mean_runtime_ms > 0.0))
            continue;
        const double x = std::log(static_cast<double>(row.size));
        const double y = std::log(row.mean_runtime_ms);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    const double k = static_cast<double>(count);
    const double denom = k * sxx - sx * sx;
    if (count < 2 || std::abs(denom) < 1e-12)
        return std::numeric_limits<double>::quiet_NaN();
    return (k * sxy - sx * sy) / denom;
}

void write_scaling_csv(std::ostream &out, const std::vector<ScalingRow> &rows) {
    out << "size,replicates,mean_community_size,mean_best_jaccard,mean_runtime_ms,sd_runtime_ms,"
           "min_runtime_ms,max_runtime_ms\n";
    for (const auto &r : rows)
        out << r.size << ',' << r.replicates << ',' << format_number(r.mean_community_size) << ','
            << format_number(r.mean_best_jaccard) << ',' << format_number(r.mean_runtime_ms) << ','
            << format_number(r.sd_runtime_ms) << ',' << format_number(r.min_runtime_ms) << ','
            << format_number(r.max_runtime_ms) << '\n';
}

} // namespace dircomm::cli
