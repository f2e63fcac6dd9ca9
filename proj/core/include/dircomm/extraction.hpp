#pragma once

#include <dircomm/criterion.hpp>
#include <dircomm/graph.hpp>
#include <dircomm/sampler.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dircomm {

enum class NullModel : std::uint8_t { same_edge_count, degree_preserving };

std::string_view to_string(NullModel model) noexcept;
std::optional<NullModel> parse_null_model(std::string_view text) noexcept;

struct RandomizedGraph {
    DirectedGraph graph;
    /// same_edge_count drops weights; set when the input carried any weight != 1.
    bool weights_discarded = false;
    std::size_t swaps_performed = 0;
    std::size_t swap_attempts = 0;
};

/**
 * Null-model surrogate of g on the same node set.
 *
 * same_edge_count: |E| distinct ordered pairs drawn uniformly without
 * replacement from the N(N-1) non-loop slots, unit weights.
 *
 * degree_preserving: double-edge swaps (a->b, c->d) => (a->d, c->b) that
 * never create self-loops or duplicate edges, until swaps_per_edge * |E|
 * swaps succeed or 100x that many attempts are spent. Weights travel with
 * the source endpoint. Requires at least two edges.
 */
RandomizedGraph randomize(const DirectedGraph &g, NullModel model, std::uint64_t seed,
                          std::size_t swaps_per_edge = 10);

struct ExtractionConfig {
    CriterionParams criterion;
    /// Chain settings; chain.seed and chain.initial are ignored (seeds are
    /// derived from `seed`, starts are random).
    ChainConfig chain = default_chain();
    std::uint64_t seed = 1;
    /// Independent chains per search, best kept. Null replicates use the same
    /// count so observed and null scores are the same statistic.
    std::size_t restarts = 3;
    std::size_t max_communities = 10;
    std::size_t null_replicates = 100;
    NullModel null_model = NullModel::same_edge_count;
    double significance_quantile = 0.95;
    /// Worker threads for restart and null-replicate chains.
    std::size_t jobs = 1;

    void validate() const;

    /// The chain settings extraction uses unless told otherwise: c = 0.1 and
    /// a penalty warm-up over the first 30% of the budget.
    static ChainConfig default_chain() {
        ChainConfig chain;
        chain.penalty_warmup = 0.3;
        return chain;
    }
};

struct ExtractedCommunity {
    /// Node ids of the graph passed to extract_all, sorted.
    std::vector<NodeId> members;
    Score score;
    BoundaryCounts counts;
    /// Best W reached on each null replicate, in replicate order.
    std::vector<double> null_scores;
    double empirical_p = 1.0;
    /// Node count of the residual graph the community was extracted from.
    std::size_t residual_nodes = 0;
    std::size_t chain_steps = 0;
    double acceptance_rate = 0.0;
};

enum class StopReason : std::uint8_t { non_significant, max_communities, graph_exhausted };
std::string_view to_string(StopReason reason) noexcept;

struct ExtractionReport {
    std::vector<ExtractedCommunity> communities;
    StopReason stopped_reason = StopReason::max_communities;
    /// The candidate that failed the significance test, if that is why we stopped.
    std::optional<ExtractedCommunity> rejected;
};

/// Best-of-restarts chain on one graph. Chain k uses derive_seed(round_seed, k).
ChainResult find_community(const DirectedGraph &g, const ExtractionConfig &config,
                           std::uint64_t round_seed);

/// (1 + #{null >= observed}) / (1 + #null)
double empirical_p_value(double observed, const std::vector<double> &null_scores);

/**
 * Extracts communities one at a time. Each round searches the residual graph
 * (the original minus every accepted community), scores the candidate against
 * null_replicates randomized copies of the residual searched the same way
 * (same criterion, budget and restarts), and accepts it when
 * empirical_p <= 1 - significance_quantile.
 *
 * Seed scheme for round r (0-based), from config.seed:
 *   observed, restart k:  derive_seed(derive_seed(seed, r, 1), k)
 *   null j graph:         derive_seed(seed, r, 2, j)
 *   null j, restart k:    derive_seed(derive_seed(seed, r, 3, j), k)
 */
ExtractionReport extract_all(const DirectedGraph &g, const ExtractionConfig &config);

} // namespace dircomm
