#include <gtest/gtest.h>

#include <dircomm/criterion.hpp>
#include <dircomm/sampler.hpp>

#include "fixtures.hpp"

#include <cmath>
#include <limits>

namespace dircomm {

using testing::random_digraph;

namespace {

CriterionParams params_of(double rho, double n, Mode mode = Mode::directed) {
    CriterionParams p;
    p.rho = rho;
    p.n = n;
    p.mode = mode;
    return p;
}

DirectedGraph cycle_with_boundary(bool mixed) {
    std::vector<Edge> edges{{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {0, 3, 1}};
    edges.push_back(mixed ? Edge{4, 1, 1} : Edge{1, 4, 1});
    return DirectedGraph::from_edges(6, edges);
}

} // namespace

class CriterionGTest : public ::testing::Test {};

TEST_F(CriterionGTest, testConsistentBoundaryHandValue) {
    const auto g = cycle_with_boundary(false);
    const std::vector<NodeId> s{0, 1, 2};
    const auto counts = count_boundary(g, s);
    EXPECT_EQ(counts, (BoundaryCounts{3, 3.0, 0.0, 2.0}));
    const auto w = evaluate_counts(counts, 6, params_of(1.0, 1.0));
    EXPECT_DOUBLE_EQ(w.q_d, 1.0);
    EXPECT_NEAR(w.value, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(w.effective_size, 3.0);
}

TEST_F(CriterionGTest, testMixedBoundaryHandValue) {
    const auto g = cycle_with_boundary(true);
    const std::vector<NodeId> s{0, 1, 2};
    const auto counts = count_boundary(g, s);
    EXPECT_EQ(counts, (BoundaryCounts{3, 3.0, 1.0, 1.0}));
    const auto w = evaluate_counts(counts, 6, params_of(1.0, 1.0));
    EXPECT_DOUBLE_EQ(w.q_d, 3.0);
    EXPECT_NEAR(w.value, -3.0, 1e-12);
}

TEST_F(CriterionGTest, testHalfOfNetworkIsNotAdmissible) {
    // 2|S| = N is on the wrong side of the strict bound 2|S| < rho N.
    const auto counts = count_boundary(cycle_with_boundary(false), std::vector<NodeId>{0, 1, 2});
    EXPECT_FALSE(is_admissible(3, 6, 1.0));
    EXPECT_THROW(score(counts, 6, params_of(1.0, 1.0)), DomainError);
    EXPECT_TRUE(is_admissible(2, 6, 1.0));
}

TEST_F(CriterionGTest, testAdmissibilityBounds) {
    EXPECT_FALSE(is_admissible(0, 10, 1.0));
    EXPECT_EQ(max_admissible_size(10, 1.0), 4u);
    EXPECT_EQ(max_admissible_size(500, 0.8), 199u);
    EXPECT_EQ(max_admissible_size(50, 0.8), 19u);
    EXPECT_EQ(max_admissible_size(2, 1.0), 0u);
    for (std::size_t n = 1; n < 40; ++n)
        for (double rho : {0.3, 0.6, 0.8, 1.0}) {
            const std::size_t k = max_admissible_size(n, rho);
            if (k > 0)
                EXPECT_TRUE(is_admissible(k, n, rho));
            EXPECT_FALSE(is_admissible(k + 1, n, rho));
        }
}

TEST_F(CriterionGTest, testSingleEdgeRawValues) {
    // a -> b; the raw formula at rho = 1, n = 1.
    const auto g = DirectedGraph::from_edges(2, std::vector<Edge>{{0, 1, 1}});
    const auto p = params_of(1.0, 1.0);
    const auto a = evaluate_counts(count_boundary(g, std::vector<NodeId>{0}), 2, p);
    EXPECT_DOUBLE_EQ(a.q_d, 1.0);
    EXPECT_DOUBLE_EQ(a.value, -1.0);
    const auto ab = evaluate_counts(count_boundary(g, std::vector<NodeId>{0, 1}), 2, p);
    EXPECT_DOUBLE_EQ(ab.effective_size, 0.0);
    EXPECT_DOUBLE_EQ(ab.value, 0.0);
    EXPECT_EQ(max_admissible_size(2, 1.0), 0u);
}

TEST_F(CriterionGTest, testInvalidParams) {
    EXPECT_THROW(params_of(1.5, 1.0).validate(), std::invalid_argument);
    EXPECT_THROW(params_of(0.0, 1.0).validate(), std::invalid_argument);
    EXPECT_THROW(params_of(0.8, -1.0).validate(), std::invalid_argument);
    EXPECT_THROW(params_of(0.8, std::nan("")).validate(), std::invalid_argument);
    EXPECT_NO_THROW(params_of(0.8, 0.0).validate());
    EXPECT_THROW(evaluate_counts(BoundaryCounts{}, 10, params_of(0.8, 1.0)), DomainError);
}

TEST_F(CriterionGTest, testUndirectedModeForcesUnitCoefficient) {
    const BoundaryCounts counts{2, 2.0, 3.0, 3.0};
    EXPECT_DOUBLE_EQ(direction_coefficient(counts, Mode::undirected), 1.0);
    EXPECT_DOUBLE_EQ(direction_coefficient(counts, Mode::directed), 7.0);
    const auto w = evaluate_counts(counts, 20, params_of(0.8, 8.0, Mode::undirected));
    EXPECT_DOUBLE_EQ(w.q_d, 1.0);
    EXPECT_DOUBLE_EQ(w.value, 2.0 * 14.0 / 2.0 - 6.0);
}

TEST_F(CriterionGTest, testConsistentBoundaryMatchesUndirectedValue) {
    for (double b : {0.0, 1.0, 5.0, 12.5}) {
        const BoundaryCounts in_only{3, 4.0, b, 0.0};
        const BoundaryCounts out_only{3, 4.0, 0.0, b};
        for (double n : {1.0, 5.0, 8.0}) {
            const auto und = evaluate_counts(in_only, 30, params_of(0.8, n, Mode::undirected));
            EXPECT_DOUBLE_EQ(evaluate_counts(in_only, 30, params_of(0.8, n)).value, und.value);
            EXPECT_DOUBLE_EQ(evaluate_counts(out_only, 30, params_of(0.8, n)).value, und.value);
        }
    }
}

TEST_F(CriterionGTest, testCoefficientBounds) {
    Rng rng(17);
    for (int i = 0; i < 10000; ++i) {
        const double b_in = static_cast<double>(rng.below(20));
        const double b_out = static_cast<double>(rng.below(20));
        const BoundaryCounts c{1, 0.0, b_in, b_out};
        const double q = direction_coefficient(c, Mode::directed);
        EXPECT_GE(q, 1.0);
        EXPECT_LE(q, c.boundary() + 1.0);
        EXPECT_EQ(q == 1.0, b_in * b_out == 0.0);
        EXPECT_EQ(q == c.boundary() + 1.0, b_in == b_out);
    }
}

TEST_F(CriterionGTest, testDirectionConsistencyMonotone) {
    // Fixed |S|, O_S and B_S = 10: W falls as the boundary becomes balanced.
    const auto p = params_of(0.8, 5.0);
    double previous = std::numeric_limits<double>::infinity();
    for (int b_in = 0; b_in <= 5; ++b_in) {
        const BoundaryCounts c{4, 6.0, static_cast<double>(b_in), 10.0 - b_in};
        const double w = evaluate_counts(c, 40, p).value;
        EXPECT_LT(w, previous);
        previous = w;
    }
    const double balanced = evaluate_counts(BoundaryCounts{4, 6.0, 5.0, 5.0}, 40, p).value;
    for (int b_in = 0; b_in <= 10; ++b_in)
        EXPECT_GE(evaluate_counts(BoundaryCounts{4, 6.0, double(b_in), 10.0 - b_in}, 40, p).value,
                  balanced);
}

TEST_F(CriterionGTest, testZeroExponentEqualsUndirectedFormula) {
    const auto g = random_digraph(15, 0.25, 4);
    const std::vector<NodeId> s{1, 4, 6, 9};
    const auto c = count_boundary(g, s);
    EXPECT_DOUBLE_EQ(evaluate_counts(c, 15, params_of(0.9, 0.0)).value,
                     evaluate_counts(c, 15, params_of(0.9, 3.0, Mode::undirected)).value);
}

TEST_F(CriterionGTest, testNonIntegerExponent) {
    const BoundaryCounts c{2, 2.0, 1.0, 3.0};
    const double q = 5.0 / 3.0;
    const auto w = evaluate_counts(c, 20, params_of(0.8, 2.5));
    EXPECT_NEAR(w.value, 2.0 * 14.0 / 2.0 - std::pow(q, 2.5) * 4.0, 1e-12);
}

TEST_F(CriterionGTest, testAddRemoveInvolutionIsExact) {
    const auto g = random_digraph(40, 0.1, 23, 5);
    const auto p = params_of(0.8, 5.0);
    Rng rng(5);
    auto state = CommunityState::from_members(g, std::vector<NodeId>{0, 1, 2});
    for (int i = 0; i < 2000; ++i) {
        const NodeId u = static_cast<NodeId>(rng.below(g.node_count()));
        const Move there = state.contains(u) ? Move::remove : Move::add;
        const Move back = there == Move::add ? Move::remove : Move::add;
        const auto before = state.counts();
        const auto forward = state.evaluate_move(u, there, p);
        if (!forward)
            continue;
        state.apply(u, there, forward->after);
        const auto reverse = state.evaluate_move(u, back, p);
        ASSERT_TRUE(reverse.has_value());
        EXPECT_EQ(forward->delta + reverse->delta, 0.0);
        state.apply(u, back, reverse->after);
        EXPECT_EQ(state.counts(), before);
        if (rng.bernoulli(0.5)) {
            const auto step = state.evaluate_move(u, there, p);
            if (step)
                state.apply(u, there, step->after);
        }
    }
}

TEST_F(CriterionGTest, testIncrementalMatchesFullRecompute) {
    Rng rng(99);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::size_t n = 5 + rng.below(46);
        const auto g = random_digraph(n, 0.05 + 0.3 * rng.uniform(), seed, 4);
        const auto p = params_of(0.6 + 0.4 * rng.uniform(), 5.0 * rng.uniform());
        auto state = CommunityState::from_members(g, std::vector<NodeId>{0});
        for (int i = 0; i < 500; ++i) {
            const NodeId u = static_cast<NodeId>(rng.below(n));
            const Move move = state.contains(u) ? Move::remove : Move::add;
            const auto eval = move_delta(state, u, move, p);
            if (!eval)
                continue;
            const double before = state.score(p).value;
            state.apply(u, move, eval->after);
            const auto full = count_boundary(g, state.members());
            ASSERT_EQ(state.counts(), full);
            const double after = score(full, n, p).value;
            ASSERT_NEAR(eval->delta, after - before, 1e-9);
        }
    }
}

TEST_F(CriterionGTest, testRemovingLastMemberIsRejected) {
    const auto g = random_digraph(10, 0.3, 2);
    const auto state = CommunityState::from_members(g, std::vector<NodeId>{3});
    EXPECT_FALSE(state.evaluate_move(3, Move::remove, params_of(1.0, 1.0)).has_value());
    EXPECT_FALSE(state.evaluate_move(3, Move::add, params_of(1.0, 1.0)).has_value());
    EXPECT_FALSE(state.evaluate_move(4, Move::remove, params_of(1.0, 1.0)).has_value());
}

TEST_F(CriterionGTest, testInadmissibleGrowthIsRejected) {
    const auto g = random_digraph(10, 0.3, 2);
    auto state = CommunityState::from_members(g, std::vector<NodeId>{0, 1, 2, 3});
    EXPECT_FALSE(state.evaluate_move(4, Move::add, params_of(1.0, 1.0)).has_value());
    EXPECT_TRUE(state.evaluate_move(3, Move::remove, params_of(1.0, 1.0)).has_value());
}

TEST_F(CriterionGTest, testUniformWeightScalingKeepsUndirectedArgmax) {
    const auto p = params_of(1.0, 0.0, Mode::undirected);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const auto g = random_digraph(8 + seed % 3, 0.3, seed, 3);
        for (double factor : {2.0, 0.5, 4.0}) {
            std::vector<Edge> scaled = g.edges();
            for (auto &e : scaled)
                e.weight *= factor;
            const auto h = DirectedGraph::from_edges(g.node_count(), scaled);
            const auto a = brute_force_optimum(g, p);
            const auto b = brute_force_optimum(h, p);
            EXPECT_EQ(a.members, b.members);
            EXPECT_DOUBLE_EQ(b.score.value, factor * a.score.value);
            // Counts scale linearly.
            const auto ca = count_boundary(g, a.members);
            const auto cb = count_boundary(h, a.members);
            EXPECT_DOUBLE_EQ(cb.internal, factor * ca.internal);
            EXPECT_DOUBLE_EQ(cb.b_in, factor * ca.b_in);
            EXPECT_DOUBLE_EQ(cb.b_out, factor * ca.b_out);
        }
    }
}

} // namespace dircomm
