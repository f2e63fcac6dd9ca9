#include <dircomm/benchmark.hpp>
#include <dircomm/random.hpp>

#include <stdexcept>

namespace dircomm {

void BenchmarkSpec::validate() const {
    if (!(p1 >= 0.0 && p1 <= 1.0))
        throw std::invalid_argument("p1 must lie in [0, 1]");
    if (!(p2 >= 0.0 && p2 <= 1.0))
        throw std::invalid_argument("p2 must lie in [0, 1]");
    if (n1 + n2 < 2)
        throw std::invalid_argument("n1 + n2 must be at least 2");
}

std::vector<NodeId> GroundTruth::members(Role role) const {
    std::vector<NodeId> out;
    for (NodeId u = 0; u < roles.size(); ++u)
        if (roles[u] == role)
            out.push_back(u);
    return out;
}

std::vector<std::int64_t> GroundTruth::assignment() const {
    std::vector<std::int64_t> out(roles.size(), -1);
    for (std::size_t u = 0; u < roles.size(); ++u) {
        if (roles[u] == Role::sink)
            out[u] = 1;
        else if (roles[u] == Role::source)
            out[u] = 2;
    }
    return out;
}

Benchmark generate(const BenchmarkSpec &spec) {
    spec.validate();
    const std::size_t n = spec.node_count();

    Benchmark out;
    out.truth.roles.assign(n, Role::background);
    const std::size_t first = spec.figure1_variant ? spec.n2 : spec.n1;
    const Role first_role = spec.figure1_variant ? Role::source : Role::sink;
    const Role second_role = spec.figure1_variant ? Role::sink : Role::source;
    for (std::size_t u = 0; u < spec.n1 + spec.n2; ++u)
        out.truth.roles[u] = u < first ? first_role : second_role;

    const auto &roles = out.truth.roles;
    Rng rng(spec.seed);
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            const bool dense = roles[i] != Role::background && roles[j] != Role::background;
            if (!rng.bernoulli(dense ? spec.p1 : spec.p2))
                continue;
            bool forward; // i -> j
            if ((roles[i] == Role::source) != (roles[j] == Role::source))
                forward = roles[i] == Role::source;
            else if ((roles[i] == Role::sink) != (roles[j] == Role::sink))
                forward = roles[j] == Role::sink;
            else
                forward = rng.bernoulli(0.5);
            edges.push_back(forward ? Edge{i, j, 1.0} : Edge{j, i, 1.0});
        }
    }
    out.graph = DirectedGraph::from_edges(n, edges);
    return out;
}

} // namespace dircomm
