#pragma once

#include <dircomm/graph.hpp>
#include <dircomm/random.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace dircomm::testing {

inline DirectedGraph parse(const std::string &text, bool directed = true) {
    std::istringstream in(text);
    return read_edge_list(in, directed);
}

/// Directed G(n, p) with integer weights drawn from 1..max_weight.
inline DirectedGraph random_digraph(std::size_t n, double p, std::uint64_t seed,
                                    unsigned max_weight = 1) {
    Rng rng(seed);
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j)
            if (i != j && rng.bernoulli(p))
                edges.push_back({i, j, static_cast<double>(1 + rng.below(max_weight))});
    return DirectedGraph::from_edges(n, edges);
}

/// Two bidirectional 5-cliques {0..4} and {5..9} joined by the edge 4 -> 5.
inline DirectedGraph two_cliques() {
    std::vector<Edge> edges;
    for (NodeId base : {0u, 5u})
        for (NodeId i = base; i < base + 5; ++i)
            for (NodeId j = base; j < base + 5; ++j)
                if (i != j)
                    edges.push_back({i, j, 1.0});
    edges.push_back({4, 5, 1.0});
    return DirectedGraph::from_edges(10, edges);
}

} // namespace dircomm::testing
