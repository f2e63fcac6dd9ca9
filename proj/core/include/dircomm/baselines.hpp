#pragma once

#include <dircomm/evaluation.hpp>
#include <dircomm/extraction.hpp>
#include <dircomm/graph.hpp>

#include <vector>

namespace dircomm {

/// True when every edge u->v has a reverse v->u of equal weight.
bool is_symmetric(const DirectedGraph &g);

/// Direction-blind extraction: extract_all on symmetrize(g) with the
/// direction coefficient fixed at 1. A graph that is already symmetric is used
/// as is, so its weights are not doubled. Node ids are those of g.
ExtractionReport run_uce(const DirectedGraph &g, ExtractionConfig config);

struct DmmConfig {
    std::size_t target_parts = 3;
    /// Upper bound on greedy node-moving passes after each bisection.
    std::size_t refinement_passes = 20;
    double tolerance = 1e-8;
    std::size_t max_iterations = 10000;

    void validate() const;
};

struct DmmResult {
    PartitionLabels partition;
    double modularity = 0.0;
    /// For every accepted bisection: Q right after the spectral split, then Q
    /// after each refinement pass.
    std::vector<std::vector<double>> refinement_history;
};

/// Q = (1/m) sum_ij [A_ij - k_i^out k_j^in / m] delta(c_i, c_j). Unassigned
/// nodes (-1) count as their own singleton groups.
double directed_modularity(const DirectedGraph &g, const std::vector<std::int64_t> &assignment);

/**
 * Directed modularity maximization by repeated spectral bisection.
 *
 * Each candidate split of a part takes the sign pattern of the leading
 * eigenvector of the generalized modularity matrix B + B^T restricted to the
 * part (power iteration with a Gershgorin shift), followed by greedy
 * single-node moves between the two halves. The split with the largest
 * positive modularity gain is applied until target_parts is reached or no
 * split helps. Every node receives a part id in [0, parts).
 */
DmmResult run_dmm(const DirectedGraph &g, const DmmConfig &config = {});

} // namespace dircomm
