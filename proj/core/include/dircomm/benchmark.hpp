#pragma once

#include <dircomm/graph.hpp>

#include <cstdint>
#include <vector>

namespace dircomm {

/// Planted directed benchmark: a dense block S12 = S1 u S2 inside a sparse
/// background S0. S2 is a source community (all links leaving it point
/// outward), S1 a sink community (all links touching it from outside point
/// inward).
struct BenchmarkSpec {
    std::size_t n1 = 40;  ///< sink community S1
    std::size_t n2 = 50;  ///< source community S2
    std::size_t n0 = 410; ///< background
    double p1 = 0.7;      ///< link probability for pairs inside S12
    double p2 = 0.05;     ///< link probability for every other pair
    std::uint64_t seed = 1;
    /// Node order of the small illustrative network: the source block first,
    /// then the sink block, then background. Default order is S1, S2, S0.
    bool figure1_variant = false;

    std::size_t node_count() const noexcept { return n0 + n1 + n2; }
    void validate() const;
};

enum class Role : std::uint8_t { background = 0, sink = 1, source = 2 };

struct GroundTruth {
    std::vector<Role> roles;

    std::vector<NodeId> members(Role role) const;
    std::vector<NodeId> sink() const { return members(Role::sink); }
    std::vector<NodeId> source() const { return members(Role::source); }
    /// 1 for S1, 2 for S2, -1 for background (the label-file convention).
    std::vector<std::int64_t> assignment() const;
};

struct Benchmark {
    DirectedGraph graph;
    GroundTruth truth;
};

/// Each unordered pair is linked at most once. Orientation: a link with one
/// endpoint in S2 leaves S2; otherwise a link with one endpoint in S1 enters
/// S1; otherwise the orientation is a fair coin. Unit weights.
Benchmark generate(const BenchmarkSpec &spec);

} // namespace dircomm
