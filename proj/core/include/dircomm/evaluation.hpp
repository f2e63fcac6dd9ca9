#pragma once

#include <dircomm/graph.hpp>

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace dircomm {

/// |A n B| / |A u B|, with J(empty, empty) = 1. Inputs need not be sorted.
double jaccard(std::span<const NodeId> a, std::span<const NodeId> b);

/// max over the two pairings of (J(S1, Ci) + J(S2, Cj)) / 2, i != j.
double adjusted_jaccard(std::span<const NodeId> s1, std::span<const NodeId> s2,
                        std::span<const NodeId> c1, std::span<const NodeId> c2);

struct PairMatch {
    static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    double score = 0.0;
    /// Indices into the candidate list; `none` marks a missing (empty) community.
    std::size_t first = none;
    std::size_t second = none;
};

/// Best adjusted Jaccard over every ordered pair of distinct candidates.
/// Fewer than two candidates are padded with empty sets.
PairMatch best_pair(std::span<const NodeId> s1, std::span<const NodeId> s2,
                    const std::vector<std::vector<NodeId>> &found);

/// Node -> community id; -1 marks unassigned (background) nodes.
struct PartitionLabels {
    std::vector<std::int64_t> assignment;

    /// Node lists per community id, ordered by id.
    std::vector<std::vector<NodeId>> groups() const;
    std::size_t part_count() const { return groups().size(); }
};

struct EvaluationRow {
    std::uint64_t seed = 0;
    std::string method;
    double rho = 0.0;
    double n = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double adjusted_jaccard = 0.0;
    double runtime_ms = 0.0;
    std::string error;
};

/// Schema: seed,method,rho,n,p1,p2,adjusted_jaccard,runtime_ms,error
void write_evaluation_header(std::ostream &out);
void write_evaluation_row(std::ostream &out, const EvaluationRow &row);

} // namespace dircomm
