#include <dircomm/baselines.hpp>
#include <dircomm/random.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace dircomm {

bool is_symmetric(const DirectedGraph &g) {
    for (const Edge &e : g.edges())
        if (g.weight(e.dst, e.src) != e.weight)
            return false;
    return true;
}

ExtractionReport run_uce(const DirectedGraph &g, ExtractionConfig config) {
    config.criterion.mode = Mode::undirected;
    if (is_symmetric(g))
        return extract_all(g, config);
    return extract_all(symmetrize(g), config);
}

void DmmConfig::validate() const {
    if (target_parts < 2)
        throw std::invalid_argument("target_parts must be >= 2");
    if (!(tolerance > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (max_iterations < 1)
        throw std::invalid_argument("max_iterations must be >= 1");
}

double directed_modularity(const DirectedGraph &g, const std::vector<std::int64_t> &assignment) {
    const double m = g.total_weight();
    if (m == 0.0)
        return 0.0;
    std::unordered_map<std::int64_t, std::array<double, 3>> parts; // internal, k_out, k_in
    auto key = [&](NodeId u) {
        return assignment[u] >= 0 ? assignment[u] : -1 - static_cast<std::int64_t>(u);
    };
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto &p = parts[key(u)];
        p[1] += g.out_weight(u);
        p[2] += g.in_weight(u);
        for (const Neighbor &v : g.out_neighbors(u))
            if (key(v.node) == key(u))
                p[0] += v.weight;
    }
    double q = 0.0;
    for (const auto &[id, p] : parts)
        q += p[0] - p[1] * p[2] / m;
    return q / m;
}

namespace {

/// Working partition of the whole graph with per-part totals, supporting
/// O(deg) modularity gains for single-node moves.
class Partition {
public:
    Partition(const DirectedGraph &g, std::vector<std::int64_t> labels)
        : g_(g), m_(g.total_weight()), label_(std::move(labels)) {
        std::int64_t max_id = -1;
        for (auto l : label_)
            max_id = std::max(max_id, l);
        internal_.assign(static_cast<std::size_t>(max_id + 1), 0.0);
        k_out_.assign(internal_.size(), 0.0);
        k_in_.assign(internal_.size(), 0.0);
        size_.assign(internal_.size(), 0);
        for (NodeId u = 0; u < g.node_count(); ++u) {
            const auto c = static_cast<std::size_t>(label_[u]);
            k_out_[c] += g.out_weight(u);
            k_in_[c] += g.in_weight(u);
            ++size_[c];
            for (const Neighbor &v : g.out_neighbors(u))
                if (label_[v.node] == label_[u])
                    internal_[c] += v.weight;
        }
    }

    std::int64_t label(NodeId u) const { return label_[u]; }
    const std::vector<std::int64_t> &labels() const { return label_; }
    std::size_t size(std::int64_t c) const { return size_[static_cast<std::size_t>(c)]; }

    double modularity() const {
        double q = 0.0;
        for (std::size_t c = 0; c < internal_.size(); ++c)
            q += internal_[c] - k_out_[c] * k_in_[c] / m_;
        return q / m_;
    }

    double links(NodeId u, std::int64_t c) const {
        double w = 0.0;
        for (const Neighbor &v : g_.out_neighbors(u))
            if (label_[v.node] == c)
                w += v.weight;
        for (const Neighbor &v : g_.in_neighbors(u))
            if (label_[v.node] == c)
                w += v.weight;
        return w;
    }

    double move_gain(NodeId u, std::int64_t to) const {
        const auto a = static_cast<std::size_t>(label_[u]);
        const auto b = static_cast<std::size_t>(to);
        const double ko = g_.out_weight(u);
        const double ki = g_.in_weight(u);
        const double d_internal = links(u, to) - links(u, label_[u]);
        const double d_expected =
            ((k_out_[a] - ko) * (k_in_[a] - ki) - k_out_[a] * k_in_[a] +
             (k_out_[b] + ko) * (k_in_[b] + ki) - k_out_[b] * k_in_[b]) /
            m_;
        return (d_internal - d_expected) / m_;
    }

    void move(NodeId u, std::int64_t to) {
        const auto a = static_cast<std::size_t>(label_[u]);
        const auto b = static_cast<std::size_t>(to);
        internal_[a] -= links(u, label_[u]);
        internal_[b] += links(u, to);
        k_out_[a] -= g_.out_weight(u);
        k_in_[a] -= g_.in_weight(u);
        k_out_[b] += g_.out_weight(u);
        k_in_[b] += g_.in_weight(u);
        --size_[a];
        ++size_[b];
        label_[u] = to;
    }

private:
    const DirectedGraph &g_;
    double m_;
    std::vector<std::int64_t> label_;
    std::vector<double> internal_, k_out_, k_in_;
    std::vector<std::size_t> size_;
};

/// y = (M^(G) + shift I) x for the symmetrized generalized modularity matrix
/// restricted to the node list `group`.
class RestrictedModularity {
public:
    RestrictedModularity(const DirectedGraph &g, const std::vector<NodeId> &group)
        : g_(g), group_(group), m_(g.total_weight()), local_(g.node_count(), -1),
          diag_(group.size(), 0.0) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            local_[group[i]] = static_cast<std::int64_t>(i);
            k_out_total_ += g.out_weight(group[i]);
            k_in_total_ += g.in_weight(group[i]);
        }
        for (std::size_t i = 0; i < group.size(); ++i) {
            const NodeId u = group[i];
            double inside = 0.0;
            for (const Neighbor &v : g.out_neighbors(u))
                if (local_[v.node] >= 0)
                    inside += v.weight;
            for (const Neighbor &v : g.in_neighbors(u))
                if (local_[v.node] >= 0)
                    inside += v.weight;
            const double expected =
                (g.out_weight(u) * k_in_total_ + g.in_weight(u) * k_out_total_) / m_;
            diag_[i] = inside - expected;
            shift_ = std::max(shift_, inside + expected + std::abs(diag_[i]));
        }
    }

    std::size_t size() const { return group_.size(); }
    double shift() const { return shift_; }

    void apply(const std::vector<double> &x, std::vector<double> &y, double shift) const {
        double dot_in = 0.0;
        double dot_out = 0.0;
        for (std::size_t j = 0; j < group_.size(); ++j) {
            dot_in += g_.in_weight(group_[j]) * x[j];
            dot_out += g_.out_weight(group_[j]) * x[j];
        }
        for (std::size_t i = 0; i < group_.size(); ++i) {
            const NodeId u = group_[i];
            double acc = 0.0;
            for (const Neighbor &v : g_.out_neighbors(u))
                if (local_[v.node] >= 0)
                    acc += v.weight * x[static_cast<std::size_t>(local_[v.node])];
            for (const Neighbor &v : g_.in_neighbors(u))
                if (local_[v.node] >= 0)
                    acc += v.weight * x[static_cast<std::size_t>(local_[v.node])];
            acc -= (g_.out_weight(u) * dot_in + g_.in_weight(u) * dot_out) / m_;
            acc -= diag_[i] * x[i];
            y[i] = acc + shift * x[i];
        }
    }

private:
    const DirectedGraph &g_;
    const std::vector<NodeId> &group_;
    double m_;
    std::vector<std::int64_t> local_;
    std::vector<double> diag_;
    double k_out_total_ = 0.0;
    double k_in_total_ = 0.0;
    double shift_ = 0.0;
};

double norm(const std::vector<double> &x) {
    return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

/// Leading eigenpair of the restricted matrix; returns (eigenvalue, vector).
std::pair<double, std::vector<double>> leading_eigenvector(const RestrictedModularity &op,
                                                           const DmmConfig &config) {
    const std::size_t n = op.size();
    std::vector<double> x(n);
    Rng rng(0x5eedULL + n);
    for (double &v : x)
        v = rng.uniform() - 0.5;
    double nx = norm(x);
    for (double &v : x)
        v /= nx;

    const double shift = op.shift();
    std::vector<double> y(n);
    for (std::size_t it = 0; it < config.max_iterations; ++it) {
        op.apply(x, y, shift);
        const double ny = norm(y);
        if (ny == 0.0)
            break;
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= ny;
            diff += (y[i] - x[i]) * (y[i] - x[i]);
        }
        x.swap(y);
        if (std::sqrt(diff) < config.tolerance)
            break;
    }
    op.apply(x, y, 0.0);
    const double lambda = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    return {lambda, std::move(x)};
}

struct Candidate {
    double gain = 0.0;
    std::vector<NodeId> left;
    std::vector<NodeId> right;
    std::vector<double> history;
};

std::optional<Candidate> propose_split(const DirectedGraph &g, const Partition &current,
                                       const std::vector<NodeId> &group, std::int64_t spare_id,
                                       const DmmConfig &config) {
    if (group.size() < 2)
        return std::nullopt;
    RestrictedModularity op(g, group);
    auto [lambda, vec] = leading_eigenvector(op, config);
    if (!(lambda > config.tolerance))
        return std::nullopt;

    std::vector<std::int64_t> labels = current.labels();
    const std::int64_t home = labels[group.front()];
    std::size_t moved = 0;
    for (std::size_t i = 0; i < group.size(); ++i) {
        if (vec[i] < 0.0) {
            labels[group[i]] = spare_id;
            ++moved;
        }
    }
    if (moved == 0 || moved == group.size())
        return std::nullopt;

    Partition trial(g, std::move(labels));
    Candidate cand;
    const double before = current.modularity();
    cand.history.push_back(trial.modularity());
    for (std::size_t pass = 0; pass < config.refinement_passes; ++pass) {
        bool changed = false;
        for (NodeId u : group) {
            const std::int64_t from = trial.label(u);
            const std::int64_t to = from == home ? spare_id : home;
            if (trial.size(from) <= 1)
                continue;
            if (trial.move_gain(u, to) > 1e-12) {
                trial.move(u, to);
                changed = true;
            }
        }
        if (!changed)
            break;
        cand.history.push_back(trial.modularity());
    }
    cand.gain = cand.history.back() - before;
    for (NodeId u : group)
        (trial.label(u) == home ? cand.left : cand.right).push_back(u);
    return cand;
}

} // namespace

DmmResult run_dmm(const DirectedGraph &g, const DmmConfig &config) {
    config.validate();
    const std::size_t n = g.node_count();
    DmmResult result;
    result.partition.assignment.assign(n, 0);
    if (g.total_weight() == 0.0 || n < 2)
        return result;

    std::vector<std::vector<NodeId>> parts(1);
    parts[0].resize(n);
    std::iota(parts[0].begin(), parts[0].end(), NodeId{0});

    while (parts.size() < config.target_parts) {
        Partition current(g, result.partition.assignment);
        const auto spare = static_cast<std::int64_t>(parts.size());
        std::optional<Candidate> best;
        std::size_t best_part = 0;
        for (std::size_t p = 0; p < parts.size(); ++p) {
            auto cand = propose_split(g, current, parts[p], spare, config);
            if (cand && cand->gain > 1e-12 && (!best || cand->gain > best->gain)) {
                best = std::move(cand);
                best_part = p;
            }
        }
        if (!best)
            break;
        parts[best_part] = best->left;
        parts.push_back(best->right);
        for (NodeId u : best->right)
            result.partition.assignment[u] = spare;
        result.refinement_history.push_back(std::move(best->history));
    }
    result.modularity = directed_modularity(g, result.partition.assignment);
    return result;
}

} // namespace dircomm
