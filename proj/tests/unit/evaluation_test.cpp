#include <gtest/gtest.h>

#include <dircomm/evaluation.hpp>

#include <sstream>

namespace dircomm {

namespace {

using Set = std::vector<NodeId>;

} // namespace

class EvaluationGTest : public ::testing::Test {};

TEST_F(EvaluationGTest, testJaccard) {
    EXPECT_DOUBLE_EQ(jaccard(Set{1, 2, 3}, Set{3, 2, 1}), 1.0);
    EXPECT_DOUBLE_EQ(jaccard(Set{1, 2}, Set{3, 4}), 0.0);
    EXPECT_DOUBLE_EQ(jaccard(Set{1, 2, 3}, Set{2, 3, 4}), 0.5);
    EXPECT_DOUBLE_EQ(jaccard(Set{2, 3, 4}, Set{1, 2, 3}), 0.5);
    EXPECT_DOUBLE_EQ(jaccard(Set{1, 2}, Set{}), 0.0);
    EXPECT_DOUBLE_EQ(jaccard(Set{}, Set{}), 1.0);
    EXPECT_DOUBLE_EQ(jaccard(Set{1, 1, 2}, Set{1, 2}), 1.0);
}

TEST_F(EvaluationGTest, testAdjustedJaccard) {
    const Set s1{1, 2, 3, 4}, s2{5, 6, 7, 8};
    EXPECT_DOUBLE_EQ(adjusted_jaccard(s1, s2, s1, s2), 1.0);
    EXPECT_DOUBLE_EQ(adjusted_jaccard(s1, s2, s2, s1), 1.0);
    EXPECT_DOUBLE_EQ(adjusted_jaccard(s1, s2, s1, Set{}), 0.5);
    EXPECT_DOUBLE_EQ(adjusted_jaccard(s1, s2, Set{}, s1), 0.5);
    const Set c1{1, 2, 5}, c2{6, 7};
    EXPECT_DOUBLE_EQ(adjusted_jaccard(s1, s2, c1, c2), adjusted_jaccard(s1, s2, c2, c1));
    EXPECT_LT(adjusted_jaccard(s1, s2, c1, c2), 1.0);
    EXPECT_GE(adjusted_jaccard(s1, s2, c1, c2), 0.0);
}

TEST_F(EvaluationGTest, testBestPairPicksTwoOfMany) {
    const Set s1{1, 2, 3, 4}, s2{5, 6, 7, 8};
    const std::vector<Set> found{{9, 10, 11}, {5, 6, 7, 8}, {1, 2, 3}};
    const auto match = best_pair(s1, s2, found);
    EXPECT_DOUBLE_EQ(match.score, 0.5 * (0.75 + 1.0));
    EXPECT_EQ(match.first, 2u);
    EXPECT_EQ(match.second, 1u);
}

TEST_F(EvaluationGTest, testBestPairWithFewCandidates) {
    const Set s1{1, 2}, s2{3, 4};
    const auto none = best_pair(s1, s2, {});
    EXPECT_DOUBLE_EQ(none.score, 0.0);
    const auto one = best_pair(s1, s2, {{3, 4}});
    EXPECT_DOUBLE_EQ(one.score, 0.5);
    EXPECT_EQ(one.second, 0u);
    EXPECT_EQ(one.first, PairMatch::none);
}

TEST_F(EvaluationGTest, testPartitionGroups) {
    const PartitionLabels labels{{2, 0, 2, -1, 0, 5}};
    const auto groups = labels.groups();
    ASSERT_EQ(groups.size(), 3u);
    EXPECT_EQ(groups[0], (Set{1, 4}));
    EXPECT_EQ(groups[1], (Set{0, 2}));
    EXPECT_EQ(groups[2], (Set{5}));
    EXPECT_EQ(labels.part_count(), 3u);
}

TEST_F(EvaluationGTest, testEvaluationCsv) {
    std::ostringstream out;
    write_evaluation_header(out);
    EvaluationRow row;
    row.seed = 7;
    row.method = "dce";
    row.rho = 0.8;
    row.n = 5;
    row.p1 = 0.7;
    row.p2 = 0.05;
    row.adjusted_jaccard = 0.9125;
    row.runtime_ms = 12.5;
    row.error = "bad, input\nhere";
    write_evaluation_row(out, row);
    EXPECT_EQ(out.str(), "seed,method,rho,n,p1,p2,adjusted_jaccard,runtime_ms,error\n"
                         "7,dce,0.8,5,0.7,0.05,0.9125,12.5,bad; input;here\n");
}

} // namespace dircomm
