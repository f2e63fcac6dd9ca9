#pragma once

#include <dircomm/baselines.hpp>
#include <dircomm/benchmark.hpp>
#include <dircomm/evaluation.hpp>
#include <dircomm/extraction.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dircomm::cli {

/// Bumped whenever a CSV column is added, removed or reordered.
inline constexpr int csv_schema_version = 1;

enum class Method : std::uint8_t { dce, uce, dmm };

std::string_view to_string(Method method) noexcept;
std::optional<Method> parse_method(std::string_view text) noexcept;

/// Adjusted Jaccard of the best ordered pair of found groups against the
/// planted sink and source communities.
double score_against_truth(const GroundTruth &truth, const std::vector<std::vector<NodeId>> &found);

/// Runs one method on g and returns the groups it reports (extracted
/// communities in original ids, or DMM parts).
std::vector<std::vector<NodeId>> detect(const DirectedGraph &g, Method method,
                                        const ExtractionConfig &extraction, const DmmConfig &dmm);

struct SweepGrid {
    std::vector<double> rhos{0.8};
    std::vector<double> ns{5.0};
    std::vector<double> p1s{0.7};
    std::vector<double> p2s{0.05};
    std::vector<Method> methods{Method::dce};
    std::size_t replicates = 20;
    /// Community sizes, flags and the like; p1, p2 and seed are overridden per cell.
    BenchmarkSpec base;
    /// Criterion fields and seed are overridden per row.
    ExtractionConfig extraction;
    DmmConfig dmm;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;

    void validate() const;
};

/// One row per (p1, p2, rho, n, method, replicate) in that nesting order.
///
/// Graph for the pair index g = (p1 index) * |p2s| + (p2 index) and
/// replicate r: derive_seed(seed, g, r). Extraction master seed:
/// derive_seed(seed, g, r, 1). Every method and criterion setting of a
/// replicate sees the same graph. A failing row keeps its error text and the
/// sweep continues.
std::vector<EvaluationRow> run_sweep(const SweepGrid &grid);

struct SweepSummaryRow {
    std::string method;
    double rho = 0.0;
    double n = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    std::size_t replicates = 0;
    std::size_t failures = 0;
    double mean_adjusted_jaccard = 0.0;
    double sd_adjusted_jaccard = 0.0;
    double mean_runtime_ms = 0.0;
};

/// Groups rows by (method, rho, n, p1, p2) in order of first appearance.
/// Failed rows count toward failures only.
std::vector<SweepSummaryRow> summarize(const std::vector<EvaluationRow> &rows);

void write_sweep_csv(std::ostream &out, const std::vector<EvaluationRow> &rows);
void write_summary_csv(std::ostream &out, const std::vector<SweepSummaryRow> &rows);

struct ScalingConfig {
    std::vector<std::size_t> sizes{2000, 4000, 6000, 8000, 10000};
    std::size_t replicates = 20;
    std::uint64_t seed = 1;
    std::size_t n1 = 40;
    std::size_t n2 = 50;
    double p1 = 0.7;
    /// Background link probability is mean_degree / (N - 1).
    double mean_degree = 25.0;
    ExtractionConfig extraction = single_restart();

    void validate() const;

    static ExtractionConfig single_restart() {
        ExtractionConfig config;
        config.restarts = 1;
        return config;
    }
};

struct ScalingRow {
    std::size_t size = 0;
    std::size_t replicates = 0;
    double mean_community_size = 0.0;
    /// Best Jaccard of the found set against either planted community.
    double mean_best_jaccard = 0.0;
    double mean_runtime_ms = 0.0;
    double sd_runtime_ms = 0.0;
    double min_runtime_ms = 0.0;
    double max_runtime_ms = 0.0;
};

/// Times a single community search (no significance test) on benchmarks of
/// each size. Size index i, replicate r: graph seed derive_seed(seed, i, r),
/// search seed derive_seed(seed, i, r, 1). Runs sequentially so timings are
/// not disturbed by concurrent work.
std::vector<ScalingRow> run_scaling(const ScalingConfig &config);

/// Least-squares slope of log(mean runtime) against log(size). NaN with
/// fewer than two distinct sizes.
double fit_exponent(const std::vector<ScalingRow> &rows);

void write_scaling_csv(std::ostream &out, const std::vector<ScalingRow> &rows);

/// Shortest round-trip decimal form.
std::string format_number(double value);

} // namespace dircomm::cli
