#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dircomm {

using NodeId = std::uint32_t;

/// Malformed input text. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string &what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input that parses but violates a graph invariant (self-loop, bad weight, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Edge {
    NodeId src;
    NodeId dst;
    double weight;

    friend bool operator==(const Edge &, const Edge &) = default;
};

struct Neighbor {
    NodeId node;
    double weight;
};

/**
 * Immutable weighted directed graph stored as two CSR arrays (out and in),
 * plus a merged undirected neighbor list used for closure maintenance.
 *
 * Invariants established by the factory functions:
 *  - every stored weight is > 0 and finite
 *  - no self-loops
 *  - at most one edge per ordered pair (duplicates are merged by summing)
 *  - out and in adjacency describe the same edge multiset
 */
class DirectedGraph {
public:
    DirectedGraph() = default;

    /// Builds a graph on `n` nodes. Duplicate (src, dst) pairs are summed.
    /// If `labels` is empty, node i gets label std::to_string(i).
    static DirectedGraph from_edges(std::size_t n, std::span<const Edge> edges,
                                    std::vector<std::string> labels = {});

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return out_targets_.size(); }
    /// m: sum of all edge weights.
    double total_weight() const noexcept { return total_weight_; }

    std::span<const Neighbor> out_neighbors(NodeId u) const noexcept {
        return {out_targets_.data() + out_offsets_[u], out_offsets_[u + 1] - out_offsets_[u]};
    }
    std::span<const Neighbor> in_neighbors(NodeId u) const noexcept {
        return {in_sources_.data() + in_offsets_[u], in_offsets_[u + 1] - in_offsets_[u]};
    }
    /// Distinct nodes adjacent to u in either direction, sorted.
    std::span<const NodeId> neighbors(NodeId u) const noexcept {
        return {adjacent_.data() + adjacent_offsets_[u],
                adjacent_offsets_[u + 1] - adjacent_offsets_[u]};
    }

    double out_weight(NodeId u) const noexcept { return out_strength_[u]; }
    double in_weight(NodeId u) const noexcept { return in_strength_[u]; }

    /// Weight of u -> v, or 0 when absent. O(log outdeg(u)).
    double weight(NodeId u, NodeId v) const noexcept;

    const std::string &label(NodeId u) const { return labels_[u]; }
    const std::vector<std::string> &labels() const noexcept { return labels_; }
    std::optional<NodeId> find(const std::string &label) const;

    /// All edges ordered by (src, dst).
    std::vector<Edge> edges() const;

    bool is_weighted() const noexcept;

private:
    std::vector<std::size_t> out_offsets_{0};
    std::vector<Neighbor> out_targets_;
    std::vector<std::size_t> in_offsets_{0};
    std::vector<Neighbor> in_sources_;
    std::vector<std::size_t> adjacent_offsets_{0};
    std::vector<NodeId> adjacent_;
    std::vector<double> out_strength_;
    std::vector<double> in_strength_;
    double total_weight_ = 0.0;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
};

/// Reads `src dst [weight]` lines; `#` starts a comment line. Labels are
/// assigned node ids in order of first appearance. With directed = false each
/// line contributes both src->dst and dst->src. A line holding a single label
/// declares an isolated node.
DirectedGraph read_edge_list(std::istream &in, bool directed = true);
DirectedGraph load_edge_list(const std::string &path, bool directed = true);

/// Writes one `src dst weight` line per edge using node labels, then one
/// single-label line per isolated node.
void write_edge_list(const DirectedGraph &g, std::ostream &out);
void save_edge_list(const DirectedGraph &g, const std::string &path);

/// A'_ij = A_ij + A_ji for i != j.
DirectedGraph symmetrize(const DirectedGraph &g);

struct InducedSubgraph {
    DirectedGraph graph;
    /// to_original[new_id] = id in the parent graph
    std::vector<NodeId> to_original;
};

/// Induced subgraph on V \ removed, reindexed in increasing original-id order.
InducedSubgraph subgraph_complement(const DirectedGraph &g, std::span<const NodeId> removed);

/// Label -> community id file (`label community_id` per line). Nodes that do
/// not appear are unassigned (-1). Unknown labels are a ValidationError.
std::vector<std::int64_t> read_assignment(std::istream &in, const DirectedGraph &g);
std::vector<std::int64_t> load_assignment(const std::string &path, const DirectedGraph &g);
/// Writes assigned nodes only, in node-id order.
void write_assignment(const DirectedGraph &g, std::span<const std::int64_t> assignment,
                      std::ostream &out);

} // namespace dircomm
