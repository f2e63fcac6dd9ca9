#include <dircomm/sampler.hpp>
#include <dircomm/random.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace dircomm {

std::size_t ChainConfig::resolved_max_steps(std::size_t n_nodes) const noexcept {
    return max_steps != 0 ? max_steps : 200 * n_nodes;
}

std::size_t ChainConfig::resolved_patience(std::size_t n_nodes) const noexcept {
    return patience != 0 ? patience : 20 * n_nodes;
}

void ChainConfig::validate(std::size_t n_nodes) const {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("chain inverse temperature c must be positive");
    if (resolved_max_steps(n_nodes) < 1)
        throw std::invalid_argument("max_steps must be >= 1");
    if (resolved_patience(n_nodes) > resolved_max_steps(n_nodes) && patience != 0)
        throw std::invalid_argument("patience must not exceed max_steps");
    if (!(penalty_warmup >= 0.0 && penalty_warmup < 1.0))
        throw std::invalid_argument("penalty_warmup must lie in [0, 1)");
    if (record_frequencies && top_k == 0)
        throw std::invalid_argument("top_k must be >= 1 when recording frequencies");
}

bool operator==(const Score &a, const Score &b) {
    return a.value == b.value && a.q_d == b.q_d && a.effective_size == b.effective_size;
}

bool operator==(const ChainResult &a, const ChainResult &b) {
    return a.best_members == b.best_members && a.best_counts == b.best_counts &&
           a.best_score == b.best_score && a.steps_run == b.steps_run &&
           a.accepted_moves == b.accepted_moves && a.acceptance_rate == b.acceptance_rate &&
           a.no_edges == b.no_edges && a.early_stopped == b.early_stopped &&
           a.trace == b.trace && a.visit_frequency == b.visit_frequency;
}

namespace {

constexpr auto npos = std::numeric_limits<std::uint32_t>::max();

/// S together with its neighbors, kept as an indexable array so a uniform
/// draw is O(1). touch[v] counts members adjacent to v.
class Closure {
public:
    explicit Closure(std::size_t n) : touch_(n, 0), pos_(n, npos) {}

    std::size_t size() const noexcept { return items_.size(); }
    NodeId at(std::size_t i) const noexcept { return items_[i]; }
    std::uint32_t touch(NodeId v) const noexcept { return touch_[v]; }
    bool contains(NodeId v) const noexcept { return pos_[v] != npos; }

    /// Call after u has become a member.
    void on_add(const DirectedGraph &g, NodeId u) {
        insert(u);
        for (NodeId v : g.neighbors(u)) {
            ++touch_[v];
            insert(v);
        }
    }

    /// Call after u has stopped being a member.
    void on_remove(const DirectedGraph &g, const CommunityState &state, NodeId u) {
        for (NodeId v : g.neighbors(u)) {
            if (--touch_[v] == 0 && !state.contains(v))
                erase(v);
        }
        if (touch_[u] == 0)
            erase(u);
    }

    /// |closure| after the move, without applying it.
    std::size_t size_after(const DirectedGraph &g, const CommunityState &state, NodeId u,
                           Move move) const {
        std::size_t s = size();
        if (move == Move::add) {
            for (NodeId v : g.neighbors(u))
                if (!contains(v))
                    ++s;
        } else {
            for (NodeId v : g.neighbors(u))
                if (touch_[v] == 1 && !state.contains(v))
                    --s;
            if (touch_[u] == 0)
                --s;
        }
        return s;
    }

private:
    void insert(NodeId v) {
        if (pos_[v] != npos)
            return;
        pos_[v] = static_cast<std::uint32_t>(items_.size());
        items_.push_back(v);
    }
    void erase(NodeId v) {
        const std::uint32_t p = pos_[v];
        if (p == npos)
            return;
        const NodeId last = items_.back();
        items_[p] = last;
        pos_[last] = p;
        items_.pop_back();
        pos_[v] = npos;
    }

    std::vector<std::uint32_t> touch_;
    std::vector<std::uint32_t> pos_;
    std::vector<NodeId> items_;
};

/// Space-saving heavy-hitter table keyed by a Zobrist hash of the member set.
class FrequencyTable {
public:
    FrequencyTable(std::size_t n, std::size_t capacity, std::uint64_t seed)
        : keys_(n), capacity_(capacity) {
        Rng rng(seed);
        for (auto &k : keys_)
            k = rng.next();
    }

    std::uint64_t key(NodeId u) const noexcept { return keys_[u]; }

    void visit(std::uint64_t hash, const CommunityState &state) {
        auto it = index_.find(hash);
        if (it != index_.end()) {
            ++entries_[it->second].count;
            return;
        }
        if (entries_.size() < capacity_) {
            index_.emplace(hash, entries_.size());
            entries_.push_back({hash, state.sorted_members(), 1, 0});
            return;
        }
        auto victim = std::min_element(entries_.begin(), entries_.end(),
                                       [](const Entry &a, const Entry &b) { return a.count < b.count; });
        index_.erase(victim->hash);
        index_.emplace(hash, static_cast<std::size_t>(victim - entries_.begin()));
        victim->hash = hash;
        victim->members = state.sorted_members();
        victim->error = victim->count;
        victim->count += 1;
    }

    /// Ranked by the guaranteed count; an evicted slot's count is inherited
    /// as error and would otherwise favour whichever set arrived last.
    std::vector<VisitedSet> ranked() const {
        std::vector<VisitedSet> out;
        out.reserve(entries_.size());
        for (const Entry &e : entries_)
            out.push_back({e.members, e.count - e.error});
        std::sort(out.begin(), out.end(), [](const VisitedSet &a, const VisitedSet &b) {
            return a.count != b.count ? a.count > b.count : a.members < b.members;
        });
        return out;
    }

private:
    struct Entry {
        std::uint64_t hash;
        std::vector<NodeId> members;
        std::uint64_t count;
        std::uint64_t error;
    };
    std::vector<std::uint64_t> keys_;
    std::size_t capacity_;
    std::vector<Entry> entries_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

NodeId pick_start_node(const DirectedGraph &g, Rng &rng) {
    std::vector<NodeId> candidates;
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (!g.neighbors(u).empty())
            candidates.push_back(u);
    if (candidates.empty())
        return static_cast<NodeId>(rng.below(g.node_count()));
    return candidates[rng.below(candidates.size())];
}

} // namespace

ChainResult run_chain(const DirectedGraph &g, const CriterionParams &params,
                      const ChainConfig &config, const StepObserver &observer) {
    const std::size_t n = g.node_count();
    if (n < 2)
        throw std::invalid_argument("chain needs a graph with at least 2 nodes");
    params.validate();
    config.validate(n);

    Rng rng(config.seed);
    std::vector<NodeId> start = config.initial;
    if (start.empty())
        start.push_back(pick_start_node(g, rng));
    for (NodeId u : start)
        if (u >= n)
            throw std::invalid_argument("initial node " + std::to_string(u) + " out of range");

    CommunityState state = CommunityState::from_members(g, start);
    if (!is_admissible(state.size(), n, params.rho))
        throw std::invalid_argument("initial set of size " + std::to_string(state.size()) +
                                    " is inadmissible for N=" + std::to_string(n) +
                                    ", rho=" + std::to_string(params.rho));

    ChainResult result;
    Score current = state.score(params);
    result.best_members = state.sorted_members();
    result.best_counts = state.counts();
    result.best_score = current;

    if (g.edge_count() == 0) {
        result.no_edges = true;
        return result;
    }

    Closure closure(n);
    for (NodeId u : state.members())
        closure.on_add(g, u);

    std::optional<FrequencyTable> freq;
    std::uint64_t hash = 0;
    if (config.record_frequencies) {
        freq.emplace(n, config.top_k, derive_seed(config.seed, 0x7a6f62726973ULL));
        for (NodeId u : state.members())
            hash ^= freq->key(u);
    }

    const std::size_t max_steps = config.resolved_max_steps(n);
    const std::size_t patience = config.resolved_patience(n);
    std::size_t since_improvement = 0;
    const auto warmup_steps =
        static_cast<std::size_t>(config.penalty_warmup * static_cast<double>(max_steps));
    CriterionParams step_params = params;

    for (std::size_t step = 1; step <= max_steps; ++step) {
        const bool warming = step <= warmup_steps;
        if (warming)
            step_params.n = params.n * static_cast<double>(step - 1) / static_cast<double>(warmup_steps);
        else
            step_params.n = params.n;
        const NodeId u = closure.at(rng.below(closure.size()));
        const Move move = state.contains(u) ? Move::remove : Move::add;

        StepRecord rec;
        rec.step = step;
        rec.node = u;
        rec.move = move;
        rec.closure_before = closure.size();
        rec.counts_before = state.counts();

        auto eval = state.evaluate_move(u, move, step_params);
        if (eval && config.hastings_corrected && move == Move::remove && closure.touch(u) == 0)
            eval.reset(); // S \ {u} could never propose re-adding u
        if (eval) {
            rec.feasible = true;
            rec.delta = eval->delta;
            double log_ratio = config.c * eval->delta;
            if (config.hastings_corrected) {
                rec.closure_after = closure.size_after(g, state, u, move);
                log_ratio += std::log(static_cast<double>(rec.closure_before)) -
                             std::log(static_cast<double>(rec.closure_after));
            }
            rec.acceptance = log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
            rec.accepted = rec.acceptance >= 1.0 || rng.uniform() < rec.acceptance;
        }

        if (rec.accepted) {
            state.apply(u, move, eval->after);
            if (move == Move::add)
                closure.on_add(g, u);
            else
                closure.on_remove(g, state, u);
            current = warming ? evaluate_counts(eval->after, n, params) : eval->score_after;
            if (freq)
                hash ^= freq->key(u);
            ++result.accepted_moves;
        }
        if (observer)
            observer(rec);

        result.steps_run = step;
        if (freq)
            freq->visit(hash, state);
        if (config.trace_stride != 0 && step % config.trace_stride == 0)
            result.trace.push_back({step, current.value, rec.accepted, state.size()});

        if (current.value > result.best_score.value) {
            result.best_score = current;
            result.best_counts = state.counts();
            result.best_members = state.sorted_members();
            since_improvement = 0;
        } else if (!warming && ++since_improvement >= patience) {
            result.early_stopped = step < max_steps;
            break;
        }
    }

    result.acceptance_rate = result.steps_run == 0
                                 ? 0.0
                                 : static_cast<double>(result.accepted_moves) /
                                       static_cast<double>(result.steps_run);
    if (freq)
        result.visit_frequency = freq->ranked();
    return result;
}

void write_trace_csv(const ChainResult &result, std::ostream &out) {
    out << "step,W,accepted,|S|\n";
    for (const TracePoint &p : result.trace)
        out << p.step << ',' << p.w << ',' << (p.accepted ? 1 : 0) << ',' << p.size << '\n';
}

BruteForceResult brute_force_optimum(const DirectedGraph &g, const CriterionParams &params,
                                     std::size_t max_nodes) {
    const std::size_t n = g.node_count();
    if (n > max_nodes || n > 30)
        throw std::length_error("brute force refused: " + std::to_string(n) +
                                " nodes exceeds cap of " + std::to_string(max_nodes));
    params.validate();

    const std::vector<Edge> edges = g.edges();
    BruteForceResult best;
    bool found = false;
    std::vector<NodeId> members;

    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (!is_admissible(size, n, params.rho))
            continue;
        ++best.admissible_sets;

        BoundaryCounts c;
        c.size = size;
        for (const Edge &e : edges) {
            const bool s = (mask >> e.src) & 1U;
            const bool t = (mask >> e.dst) & 1U;
            if (s && t)
                c.internal += e.weight;
            else if (s)
                c.b_out += e.weight;
            else if (t)
                c.b_in += e.weight;
        }
        const Score sc = evaluate_counts(c, n, params);

        members.clear();
        for (NodeId u = 0; u < n; ++u)
            if ((mask >> u) & 1U)
                members.push_back(u);

        if (!found || sc.value > best.score.value ||
            (sc.value == best.score.value && members < best.members)) {
            best.members = members;
            best.score = sc;
            found = true;
        }
    }
    if (!found)
        throw DomainError("no admissible subset exists for N=" + std::to_string(n) +
                          ", rho=" + std::to_string(params.rho));
    return best;
}

} // namespace dircomm
