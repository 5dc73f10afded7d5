#include <gtest/gtest.h>

#include "domlearn/learners.hpp"
#include "domlearn/oracle.hpp"
#include "domlearn/synthetic_teacher.hpp"
#include "test_support.hpp"

using namespace domlearn;
using namespace domlearn::testing;

TEST(OraclePartition, AgreesWithEquivalencePartition) {
  SplitMix64 rng(404);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + rng.below(16);
    const std::size_t k = 1 + rng.below(3);
    const LabeledDigraph g = rng.below(2) ? random_graph(rng, n, k, 0.3)
                                          : random_blowup(rng, n, 1 + rng.below(5), k, 0.5);
    ASSERT_EQ(oracle_partition(g), equivalence_partition(g));
    ASSERT_EQ(oracle_partition(g), brute_partition(g));
  }
}

TEST(OraclePartition, EdgeCases) {
  EXPECT_TRUE(oracle_partition(LabeledDigraph(Alphabet::with_size(1))).empty());
  LabeledDigraph complete(Alphabet::with_size(2), {0, 1, 2, 3});
  for (VertexId u = 0; u < 4; ++u)
    for (RightId a = 0; a < 2; ++a)
      for (VertexId v = 0; v < 4; ++v) complete.add_edge(u, a, v);
  EXPECT_EQ(oracle_partition(complete), (std::vector<std::vector<VertexId>>{{0, 1, 2, 3}}));
  EXPECT_THROW(oracle_partition(complete, 3), OracleRefused);
}

namespace {

ConservativeState learned_state(SyntheticTeacher& t, int rounds) {
  Session s(t);
  ConservativeLearner learner;
  for (int i = 0; i < rounds; ++i) learner.run_round(s);
  return *learner.state();
}

}  // namespace

TEST(CheckRoundInvariants, PassAfterEveryRound) {
  SplitMix64 rng(12);
  for (int world = 0; world < 20; ++world) {
    SyntheticTeacher t(generate_template(rng.next(), 1 + rng.below(5), 2, 0.5),
                       schedule::IidUniform{}, rng.next());
    Session s(t);
    ConservativeLearner learner;
    for (int i = 0; i < 20; ++i) {
      learner.run_round(s);
      const InvariantReport report = check_round_invariants(t.revealed_graph(), *learner.state());
      ASSERT_TRUE(report.all_passed()) << report.first_failure()->name;
      ASSERT_EQ(report.checks.size(), 8u);
    }
  }
}

TEST(CheckRoundInvariants, CorruptedAssignmentFailsPartition) {
  SyntheticTeacher t(make_world(2, 1, {{0, 0, 1}}), schedule::Scripted{{0, 1, 0, 1}}, 1);
  ConservativeState st = learned_state(t, 4);
  ASSERT_TRUE(check_round_invariants(t.revealed_graph(), st).all_passed());
  st.assignment[3] = 0;  // a d1 vertex moved into d0's class
  const InvariantReport report = check_round_invariants(t.revealed_graph(), st);
  EXPECT_FALSE(report.passed(invariant::kPartition));
  EXPECT_FALSE(report.passed(invariant::kHomomorphism));
  EXPECT_FALSE(report.passed(invariant::kClassify));
  EXPECT_TRUE(report.passed(invariant::kSubgraph));
}

TEST(CheckRoundInvariants, DeletedEdgeFailsHomomorphism) {
  SyntheticTeacher t(make_world(2, 1, {{0, 0, 1}}), schedule::Scripted{{0, 1, 0, 1}}, 1);
  ConservativeState st = learned_state(t, 4);
  st.summary.remove_edge(0, 0, 1);
  const InvariantReport report = check_round_invariants(t.revealed_graph(), st);
  EXPECT_FALSE(report.passed(invariant::kHomomorphism));
  EXPECT_TRUE(report.passed(invariant::kPartition));
  EXPECT_EQ(report.first_failure()->name, invariant::kHomomorphism);
}

TEST(CheckRoundInvariants, ExtraLeafFailsLeafCount) {
  SyntheticTeacher t(make_world(2, 1, {{0, 0, 1}}), schedule::Scripted{{0, 1}}, 1);
  ConservativeState st = learned_state(t, 2);
  st.tree.split(st.tree.leaves()[0], DecisionTest::loop(0), 0, 7);
  const InvariantReport report = check_round_invariants(t.revealed_graph(), st);
  EXPECT_FALSE(report.passed(invariant::kLeafCount));
}

TEST(IsomorphicSmall, Examples) {
  SplitMix64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const LabeledDigraph g = random_graph(rng, 1 + rng.below(10), 1 + rng.below(3), 0.3);
    ASSERT_TRUE(isomorphic_small(g, g));
    ASSERT_TRUE(isomorphic_small(g, relabel(g, random_permutation(rng, g.vertices()))));
    if (g.edge_count() > 0) {
      LabeledDigraph fewer = g;
      const Edge e = g.edges().front();
      fewer.remove_edge(e.source, e.right, e.target);
      ASSERT_FALSE(isomorphic_small(g, fewer));
    }
  }
}

TEST(IsomorphicSmall, SameCountsDifferentShape) {
  // Directed 3-cycle vs a path plus a loop: equal sizes, not isomorphic.
  const LabeledDigraph cycle = make_graph(1, {0, 1, 2}, {{0, 0, 1}, {1, 0, 2}, {2, 0, 0}});
  const LabeledDigraph other = make_graph(1, {0, 1, 2}, {{0, 0, 1}, {1, 0, 2}, {2, 0, 2}});
  EXPECT_FALSE(isomorphic_small(cycle, other));
  // Same profiles, different labels.
  const LabeledDigraph a = make_graph(2, {0, 1}, {{0, 0, 1}, {1, 1, 0}});
  const LabeledDigraph b = make_graph(2, {0, 1}, {{0, 0, 1}, {0, 1, 1}});
  EXPECT_FALSE(isomorphic_small(a, b));
}

TEST(IsomorphicSmall, RefusesLargeGraphs) {
  SplitMix64 rng(1);
  const LabeledDigraph g = random_graph(rng, 13, 1, 0.3);
  EXPECT_THROW(isomorphic_small(g, g), OracleRefused);
}
