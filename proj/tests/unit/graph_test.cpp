#include <gtest/gtest.h>

#include <dircomm/graph.hpp>

#include "fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dircomm {

using testing::parse;
using testing::random_digraph;

namespace {

void expect_degree_sums(const DirectedGraph &g) {
    double out = 0.0, in = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        out += g.out_weight(u);
        in += g.in_weight(u);
    }
    EXPECT_DOUBLE_EQ(out, g.total_weight());
    EXPECT_DOUBLE_EQ(in, g.total_weight());
}

} // namespace

class GraphGTest : public ::testing::Test {};

TEST_F(GraphGTest, testLoadTwoEdges) {
    const auto g = parse("a b\nb c\n");
    EXPECT_EQ(g.node_count(), 3u);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_DOUBLE_EQ(g.total_weight(), 2.0);
    EXPECT_EQ(g.label(0), "a");
    EXPECT_EQ(*g.find("c"), 2u);
    expect_degree_sums(g);
}

TEST_F(GraphGTest, testDuplicateLinesMerge) {
    const auto g = parse("a b 2\na b 3\n");
    ASSERT_EQ(g.edge_count(), 1u);
    EXPECT_DOUBLE_EQ(g.weight(0, 1), 5.0);
    EXPECT_DOUBLE_EQ(g.weight(1, 0), 0.0);
    EXPECT_TRUE(g.is_weighted());
}

TEST_F(GraphGTest, testSelfLoopRejected) {
    try {
        parse("a a\n");
        FAIL() << "self-loop accepted";
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos);
    }
}

TEST_F(GraphGTest, testNegativeWeightRejected) {
    EXPECT_THROW(parse("a b -1\n"), ValidationError);
}

TEST_F(GraphGTest, testMalformedLineReportsLine) {
    try {
        parse("# header\na b\na b c d\n");
        FAIL() << "malformed line accepted";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
    try {
        parse("a b x\n");
        FAIL() << "bad weight accepted";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 1u);
    }
}

TEST_F(GraphGTest, testUndirectedInputStoresBothDirections) {
    const auto g = parse("a b 2\n", false);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_DOUBLE_EQ(g.weight(0, 1), 2.0);
    EXPECT_DOUBLE_EQ(g.weight(1, 0), 2.0);
}

TEST_F(GraphGTest, testZeroWeightEdgesDropped) {
    const auto g = parse("a b 0\nb c 1\n");
    EXPECT_EQ(g.node_count(), 3u);
    EXPECT_EQ(g.edge_count(), 1u);
}

TEST_F(GraphGTest, testAdjacencyListsAgree) {
    const auto g = random_digraph(30, 0.2, 11, 4);
    std::size_t out_entries = 0, in_entries = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const auto out = g.out_neighbors(u);
        EXPECT_TRUE(std::is_sorted(out.begin(), out.end(),
                                   [](auto a, auto b) { return a.node < b.node; }));
        for (const auto &nb : out)
            EXPECT_DOUBLE_EQ(g.weight(u, nb.node), nb.weight);
        for (const auto &nb : g.in_neighbors(u))
            EXPECT_DOUBLE_EQ(g.weight(nb.node, u), nb.weight);
        out_entries += out.size();
        in_entries += g.in_neighbors(u).size();
    }
    EXPECT_EQ(out_entries, g.edge_count());
    EXPECT_EQ(in_entries, g.edge_count());
    expect_degree_sums(g);
}

TEST_F(GraphGTest, testSymmetrizeSingleEdge) {
    const auto s = symmetrize(parse("a b\n"));
    EXPECT_EQ(s.edge_count(), 2u);
    EXPECT_DOUBLE_EQ(s.weight(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(s.weight(1, 0), 1.0);
}

TEST_F(GraphGTest, testSymmetrizeAddsOppositeWeights) {
    const auto s = symmetrize(parse("a b 1\nb a 2\n"));
    EXPECT_DOUBLE_EQ(s.weight(0, 1), 3.0);
    EXPECT_DOUBLE_EQ(s.weight(1, 0), 3.0);
}

TEST_F(GraphGTest, testSymmetrizeEmpty) {
    const auto s = symmetrize(DirectedGraph::from_edges(0, {}));
    EXPECT_EQ(s.node_count(), 0u);
    EXPECT_EQ(s.edge_count(), 0u);
}

TEST_F(GraphGTest, testSymmetrizeTwiceDoublesWeights) {
    const auto g = random_digraph(25, 0.15, 3, 3);
    const auto once = symmetrize(g);
    const auto twice = symmetrize(once);
    const auto a = once.edges();
    const auto b = twice.edges();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].src, b[i].src);
        EXPECT_EQ(a[i].dst, b[i].dst);
        EXPECT_DOUBLE_EQ(2.0 * a[i].weight, b[i].weight);
    }
    expect_degree_sums(twice);
}

TEST_F(GraphGTest, testComplementOfNothingIsCopy) {
    const auto g = random_digraph(12, 0.3, 5, 2);
    const auto sub = subgraph_complement(g, {});
    EXPECT_EQ(sub.graph.node_count(), g.node_count());
    EXPECT_EQ(sub.graph.edges(), g.edges());
    std::vector<NodeId> identity(g.node_count());
    std::iota(identity.begin(), identity.end(), 0u);
    EXPECT_EQ(sub.to_original, identity);
}

TEST_F(GraphGTest, testComplementOfTriangle) {
    const auto g = DirectedGraph::from_edges(3, std::vector<Edge>{{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
    const std::vector<NodeId> removed{2};
    const auto sub = subgraph_complement(g, removed);
    EXPECT_EQ(sub.graph.node_count(), 2u);
    ASSERT_EQ(sub.graph.edge_count(), 1u);
    EXPECT_DOUBLE_EQ(sub.graph.weight(0, 1), 1.0);
    EXPECT_EQ(sub.to_original, (std::vector<NodeId>{0, 1}));
    expect_degree_sums(sub.graph);
}

TEST_F(GraphGTest, testComplementOfEverything) {
    const auto g = random_digraph(6, 0.5, 9);
    const std::vector<NodeId> all{0, 1, 2, 3, 4, 5};
    const auto sub = subgraph_complement(g, all);
    EXPECT_EQ(sub.graph.node_count(), 0u);
    EXPECT_EQ(sub.graph.edge_count(), 0u);
}

TEST_F(GraphGTest, testComplementKeepsLabels) {
    const auto g = parse("a b\nb c\nc d\n");
    const std::vector<NodeId> removed{1};
    const auto sub = subgraph_complement(g, removed);
    EXPECT_EQ(sub.graph.label(0), "a");
    EXPECT_EQ(sub.graph.label(1), "c");
    EXPECT_DOUBLE_EQ(sub.graph.weight(1, 2), 1.0);
}

TEST_F(GraphGTest, testSaveLoadRoundTrip) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto g = random_digraph(20, 0.1, seed, 7);
        std::stringstream buf;
        write_edge_list(g, buf);
        const auto h = read_edge_list(buf);
        EXPECT_EQ(h.node_count(), g.node_count());
        EXPECT_EQ(h.edge_count(), g.edge_count());
        for (const Edge &e : g.edges()) {
            const auto s = h.find(g.label(e.src));
            const auto t = h.find(g.label(e.dst));
            ASSERT_TRUE(s && t);
            EXPECT_EQ(h.weight(*s, *t), e.weight);
        }
    }
}

TEST_F(GraphGTest, testRoundTripKeepsIsolatedNodes) {
    const auto g = DirectedGraph::from_edges(4, std::vector<Edge>{{0, 1, 1.5}});
    std::stringstream buf;
    write_edge_list(g, buf);
    const auto h = read_edge_list(buf);
    EXPECT_EQ(h.node_count(), 4u);
    EXPECT_DOUBLE_EQ(h.weight(*h.find("0"), *h.find("1")), 1.5);
}

TEST_F(GraphGTest, testAssignmentRoundTrip) {
    const auto g = parse("a b\nb c\nc d\n");
    const std::vector<std::int64_t> labels{1, -1, 2, 1};
    std::stringstream buf;
    write_assignment(g, labels, buf);
    EXPECT_EQ(read_assignment(buf, g), labels);
}

TEST_F(GraphGTest, testAssignmentUnknownLabel) {
    const auto g = parse("a b\n");
    std::istringstream in("z 1\n");
    EXPECT_THROW(read_assignment(in, g), ValidationError);
}

TEST_F(GraphGTest, testLoadMissingFileNamesPath) {
    try {
        load_edge_list("/nonexistent/graph.txt");
        FAIL();
    } catch (const std::runtime_error &e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent/graph.txt"), std::string::npos);
    }
}

} // namespace dircomm
