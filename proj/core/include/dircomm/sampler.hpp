#pragma once

#include <dircomm/criterion.hpp>
#include <dircomm/graph.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace dircomm {

struct ChainConfig {
    /// Inverse temperature: the target distribution is proportional to exp(c W).
    double c = 0.1;
    /// 0 selects the default of 200 N steps.
    std::size_t max_steps = 0;
    /// Steps without a best-score improvement before stopping; 0 selects 20 N.
    std::size_t patience = 0;
    std::uint64_t seed = 1;
    /// Starting set. Empty picks one uniformly random non-isolated node.
    std::vector<NodeId> initial;
    /// Multiply the acceptance ratio by |closure(S_t)| / |closure(S_t+1)| and
    /// reject moves whose reverse proposal is impossible.
    bool hastings_corrected = false;
    /// Fraction of max_steps over which the penalty exponent ramps linearly
    /// from 0 up to params.n. 0 disables the ramp. The best state is always
    /// judged with the full exponent.
    double penalty_warmup = 0.0;
    bool record_frequencies = false;
    std::size_t top_k = 32;
    /// Record (step, W, accepted, |S|) every trace_stride steps; 0 disables.
    std::size_t trace_stride = 0;

    std::size_t resolved_max_steps(std::size_t n_nodes) const noexcept;
    std::size_t resolved_patience(std::size_t n_nodes) const noexcept;
    void validate(std::size_t n_nodes) const;
};

struct TracePoint {
    std::size_t step = 0;
    double w = 0.0;
    bool accepted = false;
    std::size_t size = 0;

    friend bool operator==(const TracePoint &, const TracePoint &) = default;
};

struct VisitedSet {
    std::vector<NodeId> members; ///< sorted
    std::uint64_t count = 0;     ///< visits counted since the set last entered the table

    friend bool operator==(const VisitedSet &, const VisitedSet &) = default;
};

struct ChainResult {
    std::vector<NodeId> best_members; ///< sorted
    BoundaryCounts best_counts;
    Score best_score;
    std::size_t steps_run = 0;
    std::size_t accepted_moves = 0;
    double acceptance_rate = 0.0;
    /// Graph had no edges; the chain returned its initial state without stepping.
    bool no_edges = false;
    /// Stopped by the patience rule before max_steps.
    bool early_stopped = false;
    std::vector<TracePoint> trace;
    /// Most visited sets (approximate top-k), by decreasing count.
    std::vector<VisitedSet> visit_frequency;
};

bool operator==(const Score &a, const Score &b);
bool operator==(const ChainResult &a, const ChainResult &b);

/// Everything the chain knew when it decided one step. Passed to an optional
/// observer so acceptance probabilities can be re-derived outside the chain.
struct StepRecord {
    std::size_t step = 0;
    NodeId node = 0;
    Move move = Move::add;
    /// False when the move was rejected outright (inadmissible or irreversible).
    bool feasible = false;
    double delta = 0.0;
    std::size_t closure_before = 0;
    std::size_t closure_after = 0;
    double acceptance = 0.0;
    bool accepted = false;
    BoundaryCounts counts_before;
};

using StepObserver = std::function<void(const StepRecord &)>;

/**
 * Metropolis-Hastings over node subsets.
 *
 * Each step draws u uniformly from the closure of S (S plus every node
 * adjacent to S in either direction), proposes S \ {u} if u is in S and
 * S + {u} otherwise, and accepts with probability min(1, exp(c dW)).
 * Moves that would leave the admissible region are rejected.
 *
 * Deterministic for a given config.seed.
 */
ChainResult run_chain(const DirectedGraph &g, const CriterionParams &params,
                      const ChainConfig &config, const StepObserver &observer = {});

/// Writes `step,W,accepted,|S|` rows.
void write_trace_csv(const ChainResult &result, std::ostream &out);

struct BruteForceResult {
    std::vector<NodeId> members; ///< sorted
    Score score;
    std::size_t admissible_sets = 0;
};

/// Exact argmax of the objective over all admissible nonempty subsets; ties go
/// to the lexicographically smallest member list. Throws std::length_error
/// above max_nodes and DomainError if no subset is admissible.
BruteForceResult brute_force_optimum(const DirectedGraph &g, const CriterionParams &params,
                                     std::size_t max_nodes = 20);

} // namespace dircomm
