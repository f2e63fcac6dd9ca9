#include <dircomm/report.hpp>

#include <json.hpp>

#include <algorithm>
#include <ostream>

namespace dircomm {

namespace {

using nlohmann::ordered_json;

ordered_json null_summary(std::vector<double> scores) {
    ordered_json out;
    out["count"] = scores.size();
    if (scores.empty()) {
        out["min"] = nullptr;
        out["median"] = nullptr;
        out["max"] = nullptr;
        return out;
    }
    std::sort(scores.begin(), scores.end());
    const std::size_t k = scores.size();
    out["min"] = scores.front();
    out["median"] = k % 2 ? scores[k / 2] : 0.5 * (scores[k / 2 - 1] + scores[k / 2]);
    out["max"] = scores.back();
    return out;
}

ordered_json community_json(const ExtractedCommunity &c, const DirectedGraph &g, std::size_t rank) {
    ordered_json out;
    out["rank"] = rank;
    ordered_json members = ordered_json::array();
    for (NodeId u : c.members)
        members.push_back(g.label(u));
    out["members"] = std::move(members);
    out["size"] = c.members.size();
    out["W"] = c.score.value;
    out["q_d"] = c.score.q_d;
    out["effective_size"] = c.score.effective_size;
    out["O_S"] = c.counts.internal;
    out["B_in"] = c.counts.b_in;
    out["B_out"] = c.counts.b_out;
    out["empirical_p"] = c.empirical_p;
    out["residual_nodes"] = c.residual_nodes;
    out["chain_steps"] = c.chain_steps;
    out["acceptance_rate"] = c.acceptance_rate;
    out["null_scores"] = null_summary(c.null_scores);
    return out;
}

ordered_json config_json(const ExtractionConfig &config) {
    ordered_json out;
    out["rho"] = config.criterion.rho;
    out["n"] = config.criterion.n;
    out["mode"] = config.criterion.mode == Mode::directed ? "directed" : "undirected";
    out["c"] = config.chain.c;
    out["max_steps"] = config.chain.max_steps;
    out["patience"] = config.chain.patience;
    out["hastings_corrected"] = config.chain.hastings_corrected;
    out["penalty_warmup"] = config.chain.penalty_warmup;
    out["seed"] = config.seed;
    out["restarts"] = config.restarts;
    out["max_communities"] = config.max_communities;
    out["null_model"] = std::string(to_string(config.null_model));
    out["null_replicates"] = config.null_replicates;
    out["significance_quantile"] = config.significance_quantile;
    return out;
}

} // namespace

std::string report_to_json(const ExtractionReport &report, const DirectedGraph &g,
                           const ExtractionConfig &config, std::string_view method) {
    ordered_json doc;
    doc["schema_version"] = report_schema_version;
    doc["method"] = std::string(method);
    doc["graph"] = {{"nodes", g.node_count()}, {"edges", g.edge_count()}, {"total_weight", g.total_weight()}};
    doc["config"] = config_json(config);
    doc["stopped_reason"] = std::string(to_string(report.stopped_reason));
    ordered_json list = ordered_json::array();
    for (std::size_t i = 0; i < report.communities.size(); ++i)
        list.push_back(community_json(report.communities[i], g, i + 1));
    doc["communities"] = std::move(list);
    doc["rejected_candidate"] =
        report.rejected ? community_json(*report.rejected, g, report.communities.size() + 1)
                        : ordered_json(nullptr);
    return doc.dump(2) + "\n";
}

void write_report_json(std::ostream &out, const ExtractionReport &report, const DirectedGraph &g,
                       const ExtractionConfig &config, std::string_view method) {
    out << report_to_json(report, g, config, method);
}

} // namespace dircomm
