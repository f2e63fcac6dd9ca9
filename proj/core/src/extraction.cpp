#include <dircomm/extraction.hpp>
#include <dircomm/parallel.hpp>
#include <dircomm/random.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace dircomm {

std::string_view to_string(NullModel model) noexcept {
    switch (model) {
    case NullModel::same_edge_count:
        return "same_edge_count";
    case NullModel::degree_preserving:
        return "degree_preserving";
    }
    return "unknown";
}

std::optional<NullModel> parse_null_model(std::string_view text) noexcept {
    if (text == "same_edge_count")
        return NullModel::same_edge_count;
    if (text == "degree_preserving")
        return NullModel::degree_preserving;
    return std::nullopt;
}

std::string_view to_string(StopReason reason) noexcept {
    switch (reason) {
    case StopReason::non_significant:
        return "non_significant";
    case StopReason::max_communities:
        return "max_communities";
    case StopReason::graph_exhausted:
        return "graph_exhausted";
    }
    return "unknown";
}

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

RandomizedGraph same_edge_count(const DirectedGraph &g, std::uint64_t seed) {
    const std::uint64_t n = g.node_count();
    const std::uint64_t slots = n * (n - 1);
    const std::uint64_t m = g.edge_count();
    Rng rng(seed);

    // Floyd's sampling of m distinct slots out of `slots`.
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(m * 2);
    std::vector<std::uint64_t> picked;
    picked.reserve(m);
    for (std::uint64_t j = slots - m; j < slots; ++j) {
        const std::uint64_t t = rng.below(j + 1);
        const std::uint64_t v = chosen.insert(t).second ? t : j;
        if (v == j)
            chosen.insert(j);
        picked.push_back(v);
    }
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::uint64_t slot : picked) {
        const auto src = static_cast<NodeId>(slot / (n - 1));
        auto dst = static_cast<NodeId>(slot % (n - 1));
        if (dst >= src)
            ++dst;
        edges.push_back({src, dst, 1.0});
    }
    RandomizedGraph out;
    out.weights_discarded = g.is_weighted();
    out.graph = DirectedGraph::from_edges(n, edges, g.labels());
    return out;
}

RandomizedGraph degree_preserving(const DirectedGraph &g, std::uint64_t seed,
                                  std::size_t swaps_per_edge) {
    std::vector<Edge> edges = g.edges();
    if (edges.size() < 2)
        throw std::invalid_argument("degree-preserving randomization needs at least 2 edges");
    std::unordered_set<std::uint64_t> present;
    present.reserve(edges.size() * 2);
    for (const Edge &e : edges)
        present.insert(pair_key(e.src, e.dst));

    Rng rng(seed);
    RandomizedGraph out;
    const std::size_t target = swaps_per_edge * edges.size();
    const std::size_t budget = 100 * std::max<std::size_t>(target, 1);
    while (out.swaps_performed < target && out.swap_attempts < budget) {
        ++out.swap_attempts;
        const auto i = rng.below(edges.size());
        const auto j = rng.below(edges.size());
        if (i == j)
            continue;
        Edge &x = edges[i];
        Edge &y = edges[j];
        // (a->b, c->d) => (a->d, c->b)
        if (x.src == y.dst || y.src == x.dst)
            continue;
        if (present.count(pair_key(x.src, y.dst)) || present.count(pair_key(y.src, x.dst)))
            continue;
        present.erase(pair_key(x.src, x.dst));
        present.erase(pair_key(y.src, y.dst));
        std::swap(x.dst, y.dst);
        present.insert(pair_key(x.src, x.dst));
        present.insert(pair_key(y.src, y.dst));
        ++out.swaps_performed;
    }
    out.graph = DirectedGraph::from_edges(g.node_count(), edges, g.labels());
    return out;
}

} // namespace

RandomizedGraph randomize(const DirectedGraph &g, NullModel model, std::uint64_t seed,
                          std::size_t swaps_per_edge) {
    if (g.node_count() < 2) {
        if (g.edge_count() != 0 || model == NullModel::degree_preserving)
            throw std::invalid_argument("cannot randomize a graph with fewer than 2 nodes");
        return {g, false, 0, 0};
    }
    return model == NullModel::same_edge_count ? same_edge_count(g, seed)
                                               : degree_preserving(g, seed, swaps_per_edge);
}

void ExtractionConfig::validate() const {
    criterion.validate();
    if (restarts < 1)
        throw std::invalid_argument("restarts must be >= 1");
    if (null_replicates < 1)
        throw std::invalid_argument("null_replicates must be >= 1");
    if (!(significance_quantile > 0.0 && significance_quantile < 1.0))
        throw std::invalid_argument("significance_quantile must lie in (0, 1)");
}

ChainResult find_community(const DirectedGraph &g, const ExtractionConfig &config,
                           std::uint64_t round_seed) {
    std::vector<ChainResult> runs(config.restarts);
    parallel_for(config.restarts, config.jobs, [&](std::size_t k) {
        ChainConfig chain = config.chain;
        chain.seed = derive_seed(round_seed, k);
        chain.initial.clear();
        runs[k] = run_chain(g, config.criterion, chain);
    });
    std::size_t best = 0;
    for (std::size_t k = 1; k < runs.size(); ++k)
        if (runs[k].best_score.value > runs[best].best_score.value)
            best = k;
    return std::move(runs[best]);
}

double empirical_p_value(double observed, const std::vector<double> &null_scores) {
    const auto exceed = std::count_if(null_scores.begin(), null_scores.end(),
                                      [&](double s) { return s >= observed; });
    return (1.0 + static_cast<double>(exceed)) / (1.0 + static_cast<double>(null_scores.size()));
}

ExtractionReport extract_all(const DirectedGraph &g, const ExtractionConfig &config) {
    config.validate();
    ExtractionReport report;

    InducedSubgraph residual{g, {}};
    residual.to_original.resize(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
        residual.to_original[u] = u;

    const double alpha = 1.0 - config.significance_quantile;

    for (std::size_t round = 0;; ++round) {
        if (report.communities.size() >= config.max_communities) {
            report.stopped_reason = StopReason::max_communities;
            return report;
        }
        const DirectedGraph &h = residual.graph;
        if (h.node_count() < 3 || h.edge_count() < 2 ||
            max_admissible_size(h.node_count(), config.criterion.rho) == 0) {
            report.stopped_reason = StopReason::graph_exhausted;
            return report;
        }

        ChainResult found = find_community(h, config, derive_seed(config.seed, round, 1));

        ExtractedCommunity community;
        community.score = found.best_score;
        community.counts = found.best_counts;
        community.residual_nodes = h.node_count();
        community.chain_steps = found.steps_run;
        community.acceptance_rate = found.acceptance_rate;
        for (NodeId u : found.best_members)
            community.members.push_back(residual.to_original[u]);
        std::sort(community.members.begin(), community.members.end());

        community.null_scores.resize(config.null_replicates);
        ExtractionConfig serial = config;
        serial.jobs = 1;
        parallel_for(config.null_replicates, config.jobs, [&](std::size_t j) {
            RandomizedGraph null_graph =
                randomize(h, config.null_model, derive_seed(config.seed, round, 2, j));
            community.null_scores[j] =
                find_community(null_graph.graph, serial, derive_seed(config.seed, round, 3, j))
                    .best_score.value;
        });
        community.empirical_p = empirical_p_value(community.score.value, community.null_scores);

        if (community.empirical_p > alpha + 1e-12) {
            report.rejected = std::move(community);
            report.stopped_reason = StopReason::non_significant;
            return report;
        }

        residual = [&] {
            InducedSubgraph next = subgraph_complement(h, found.best_members);
            for (NodeId &u : next.to_original)
                u = residual.to_original[u];
            return next;
        }();
        report.communities.push_back(std::move(community));
    }
}

} // namespace dircomm
