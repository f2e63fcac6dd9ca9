#pragma once

#include <dircomm/graph.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace dircomm {

/// Raised when the objective is asked to score an inadmissible set.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class Mode : std::uint8_t { directed, undirected };

struct CriterionParams {
    /// Effective-complement fraction; a set S is admissible iff 2|S|/N < rho.
    double rho = 0.8;
    /// Penalty exponent on the direction coefficient.
    double n = 5.0;
    Mode mode = Mode::directed;

    void validate() const;
};

/// Sufficient statistics of a node set S on a fixed graph.
struct BoundaryCounts {
    std::size_t size = 0;
    double internal = 0.0; ///< sum of A_ij with i, j in S
    double b_in = 0.0;     ///< sum of A_ij with i outside S, j in S
    double b_out = 0.0;    ///< sum of A_ij with i in S, j outside S

    double boundary() const noexcept { return b_in + b_out; }

    friend bool operator==(const BoundaryCounts &, const BoundaryCounts &) = default;
};

struct Score {
    double value = 0.0;
    double q_d = 1.0;
    /// rho * N - |S|
    double effective_size = 0.0;
};

bool is_admissible(std::size_t size, std::size_t n_nodes, double rho) noexcept;

/// Largest admissible |S| for a graph of n_nodes, or 0 if none.
std::size_t max_admissible_size(std::size_t n_nodes, double rho) noexcept;

/// (B + 1) / (|B_in - B_out| + 1) in directed mode, 1 in undirected mode.
double direction_coefficient(const BoundaryCounts &counts, Mode mode) noexcept;

/// The objective formula evaluated on raw counts, with no admissibility
/// check. Requires counts.size >= 1.
///
///   W = |S| |S^rho| [ O_S / |S|^2 - q^n B_S / (|S| |S^rho|) ]
///     = O_S |S^rho| / |S| - q^n B_S
Score evaluate_counts(const BoundaryCounts &counts, std::size_t n_nodes,
                      const CriterionParams &params);

/// Checked scoring: throws DomainError unless the set is admissible.
Score score(const BoundaryCounts &counts, std::size_t n_nodes, const CriterionParams &params);

/// Computes the counts of `members` from scratch in O(sum of degrees).
BoundaryCounts count_boundary(const DirectedGraph &g, std::span<const NodeId> members);

enum class Move : std::uint8_t { add, remove };

struct MoveEval {
    double delta = 0.0; ///< score(after) - score(before)
    BoundaryCounts after;
    Score score_after;
};

/**
 * A node subset of a graph with cached boundary statistics. Membership
 * updates are O(1); move evaluation is O(deg(u)).
 *
 * The state keeps a pointer to the graph, which must outlive it.
 */
class CommunityState {
public:
    explicit CommunityState(const DirectedGraph &g);

    static CommunityState from_members(const DirectedGraph &g, std::span<const NodeId> members);

    const DirectedGraph &graph() const noexcept { return *graph_; }
    bool contains(NodeId u) const noexcept { return member_[u] != 0; }
    std::size_t size() const noexcept { return members_.size(); }
    const BoundaryCounts &counts() const noexcept { return counts_; }

    /// Members in insertion-dependent order.
    std::span<const NodeId> members() const noexcept { return members_; }
    std::vector<NodeId> sorted_members() const;

    Score score(const CriterionParams &params) const;

    /// Counts after adding or removing u; no admissibility check.
    BoundaryCounts counts_after(NodeId u, Move move) const;

    /// Evaluates a single-node move. Returns nullopt (move rejected) when the
    /// resulting set would be empty or inadmissible, or when the move does not
    /// match membership (adding a member, removing a non-member).
    std::optional<MoveEval> evaluate_move(NodeId u, Move move, const CriterionParams &params) const;

    /// Applies a move with counts previously computed by evaluate_move or
    /// counts_after.
    void apply(NodeId u, Move move, const BoundaryCounts &after);
    void apply(NodeId u, Move move) { apply(u, move, counts_after(u, move)); }

private:
    const DirectedGraph *graph_;
    std::vector<std::uint8_t> member_;
    std::vector<NodeId> members_;
    std::vector<std::uint32_t> position_;
    BoundaryCounts counts_;
};

/// Free-function form of CommunityState::evaluate_move.
inline std::optional<MoveEval> move_delta(const CommunityState &state, NodeId u, Move move,
                                          const CriterionParams &params) {
    return state.evaluate_move(u, move, params);
}

} // namespace dircomm
