#include <dircomm/criterion.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace dircomm {

void CriterionParams::validate() const {
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("rho must lie in (0, 1], got " + std::to_string(rho));
    if (!(n >= 0.0) || !std::isfinite(n))
        throw std::invalid_argument("penalty exponent n must be a finite value >= 0");
}

bool is_admissible(std::size_t size, std::size_t n_nodes, double rho) noexcept {
    return size >= 1 && 2.0 * static_cast<double>(size) < rho * static_cast<double>(n_nodes);
}

std::size_t max_admissible_size(std::size_t n_nodes, double rho) noexcept {
    const double bound = rho * static_cast<double>(n_nodes) / 2.0;
    auto s = static_cast<std::size_t>(std::ceil(bound));
    while (s > 0 && !is_admissible(s, n_nodes, rho))
        --s;
    return s;
}

double direction_coefficient(const BoundaryCounts &counts, Mode mode) noexcept {
    if (mode == Mode::undirected)
        return 1.0;
    return (counts.boundary() + 1.0) / (std::abs(counts.b_in - counts.b_out) + 1.0);
}

Score evaluate_counts(const BoundaryCounts &counts, std::size_t n_nodes,
                      const CriterionParams &params) {
    if (counts.size == 0)
        throw DomainError("objective is undefined on the empty set");
    const double s = static_cast<double>(counts.size);
    Score out;
    out.effective_size = params.rho * static_cast<double>(n_nodes) - s;
    out.q_d = direction_coefficient(counts, params.mode);
    const double penalty = out.q_d == 1.0 ? 1.0 : std::exp(params.n * std::log(out.q_d));
    out.value = counts.internal * out.effective_size / s - penalty * counts.boundary();
    return out;
}

Score score(const BoundaryCounts &counts, std::size_t n_nodes, const CriterionParams &params) {
    if (!is_admissible(counts.size, n_nodes, params.rho))
        throw DomainError("set of size " + std::to_string(counts.size) +
                          " is inadmissible for N=" + std::to_string(n_nodes) +
                          ", rho=" + std::to_string(params.rho));
    return evaluate_counts(counts, n_nodes, params);
}

BoundaryCounts count_boundary(const DirectedGraph &g, std::span<const NodeId> members) {
    std::vector<std::uint8_t> in_set(g.node_count(), 0);
    for (NodeId u : members)
        in_set[u] = 1;
    BoundaryCounts c;
    c.size = static_cast<std::size_t>(std::count(in_set.begin(), in_set.end(), 1));
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (!in_set[u])
            continue;
        for (const Neighbor &v : g.out_neighbors(u))
            (in_set[v.node] ? c.internal : c.b_out) += v.weight;
        for (const Neighbor &v : g.in_neighbors(u))
            if (!in_set[v.node])
                c.b_in += v.weight;
    }
    return c;
}

CommunityState::CommunityState(const DirectedGraph &g)
    : graph_(&g), member_(g.node_count(), 0), position_(g.node_count(), 0) {}

CommunityState CommunityState::from_members(const DirectedGraph &g,
                                            std::span<const NodeId> members) {
    CommunityState state(g);
    for (NodeId u : members) {
        if (u >= g.node_count())
            throw ValidationError("member " + std::to_string(u) + " out of range");
        if (state.member_[u])
            continue;
        state.member_[u] = 1;
        state.position_[u] = static_cast<std::uint32_t>(state.members_.size());
        state.members_.push_back(u);
    }
    state.counts_ = count_boundary(g, state.members_);
    return state;
}

std::vector<NodeId> CommunityState::sorted_members() const {
    std::vector<NodeId> out(members_);
    std::sort(out.begin(), out.end());
    return out;
}

Score CommunityState::score(const CriterionParams &params) const {
    return dircomm::score(counts_, graph_->node_count(), params);
}

BoundaryCounts CommunityState::counts_after(NodeId u, Move move) const {
    const DirectedGraph &g = *graph_;
    double out_to_set = 0.0;
    double in_from_set = 0.0;
    for (const Neighbor &v : g.out_neighbors(u))
        if (member_[v.node])
            out_to_set += v.weight;
    for (const Neighbor &v : g.in_neighbors(u))
        if (member_[v.node])
            in_from_set += v.weight;
    const double out_to_rest = g.out_weight(u) - out_to_set;
    const double in_from_rest = g.in_weight(u) - in_from_set;

    BoundaryCounts c = counts_;
    if (move == Move::add) {
        c.size += 1;
        c.internal += out_to_set + in_from_set;
        c.b_out += out_to_rest - in_from_set;
        c.b_in += in_from_rest - out_to_set;
    } else {
        c.size -= 1;
        c.internal -= out_to_set + in_from_set;
        c.b_out += in_from_set - out_to_rest;
        c.b_in += out_to_set - in_from_rest;
    }
    // Cancellation on weighted graphs can leave tiny negative residues.
    c.internal = std::max(c.internal, 0.0);
    c.b_in = std::max(c.b_in, 0.0);
    c.b_out = std::max(c.b_out, 0.0);
    return c;
}

std::optional<MoveEval> CommunityState::evaluate_move(NodeId u, Move move,
                                                      const CriterionParams &params) const {
    if ((move == Move::add) == contains(u))
        return std::nullopt;
    const std::size_t n = graph_->node_count();
    const std::size_t new_size = move == Move::add ? size() + 1 : size() - 1;
    if (!is_admissible(new_size, n, params.rho))
        return std::nullopt;
    if (members_.empty())
        throw DomainError("cannot evaluate a move from the empty set");

    MoveEval eval;
    eval.after = counts_after(u, move);
    eval.score_after = evaluate_counts(eval.after, n, params);
    eval.delta = eval.score_after.value - evaluate_counts(counts_, n, params).value;
    return eval;
}

void CommunityState::apply(NodeId u, Move move, const BoundaryCounts &after) {
    if (move == Move::add) {
        member_[u] = 1;
        position_[u] = static_cast<std::uint32_t>(members_.size());
        members_.push_back(u);
    } else {
        member_[u] = 0;
        const std::uint32_t pos = position_[u];
        const NodeId last = members_.back();
        members_[pos] = last;
        position_[last] = pos;
        members_.pop_back();
    }
    counts_ = after;
}

} // namespace dircomm
