#include <gtest/gtest.h>

#include "domlearn/protocol.hpp"
#include "domlearn/summarize.hpp"
#include "domlearn/synthetic_teacher.hpp"
#include "test_support.hpp"

using namespace domlearn;
using namespace domlearn::testing;

namespace {

// d0 -r-> d1; vertices 0 and 1 in d0, vertex 2 in d1.
SyntheticTeacher scripted_teacher(std::vector<std::size_t> script) {
  return SyntheticTeacher(make_world(2, 1, {{0, 0, 1}}),
                          schedule::Scripted{std::move(script)}, 1);
}

}  // namespace

TEST(Session, FirstNextVertex) {
  SyntheticTeacher teacher = scripted_teacher({0, 0, 1});
  Session s(teacher);
  EXPECT_EQ(s.phase(), Phase::MayAdvance);
  EXPECT_EQ(s.next_vertex(), 0u);
  EXPECT_EQ(s.round(), 1u);
  EXPECT_EQ(s.phase(), Phase::AwaitingClean);
  EXPECT_TRUE(s.is_revealed(0));
}

TEST(Session, SecondNextVertexWithoutCleanTestViolatesSc2) {
  SyntheticTeacher teacher = scripted_teacher({0, 0, 1});
  Session s(teacher);
  s.next_vertex();
  try {
    s.next_vertex();
    FAIL() << "expected a violation";
  } catch (const CriterionViolation& e) {
    EXPECT_EQ(e.criterion(), Criterion::SC2);
    EXPECT_EQ(e.round(), 1u);
  }
}

TEST(Session, CleanTestAllowsNextVertex) {
  SyntheticTeacher teacher = scripted_teacher({0, 0, 1});
  Session s(teacher);
  const VertexId u = s.next_vertex();
  const LabeledDigraph h = make_graph(1, {u}, {});
  EXPECT_TRUE(s.hypothesis_test(h, {{u, u}}).empty());
  EXPECT_EQ(s.phase(), Phase::MayAdvance);
  EXPECT_NO_THROW(s.next_vertex());
  ASSERT_EQ(s.ledger().per_round.size(), 1u);
  EXPECT_EQ(s.ledger().per_round[0], (RoundSnapshot{1, 0, 1, 0}));
}

TEST(Session, ConnectionCountsAndAnswers) {
  SyntheticTeacher teacher = scripted_teacher({0, 1});
  Session s(teacher);
  const VertexId u0 = s.next_vertex();
  s.hypothesis_test(make_graph(1, {u0}, {}), {{u0, u0}});
  const VertexId u2 = s.next_vertex();
  EXPECT_TRUE(s.connection(u0, 0, u2));
  EXPECT_EQ(s.ledger().cnq_count, 1u);
  EXPECT_FALSE(s.connection(u2, 0, u0));
  EXPECT_EQ(s.ledger().cnq_count, 2u);
  EXPECT_THROW(s.connection(u0, 0, 5), ProtocolViolation);
  EXPECT_THROW(s.connection(u0, 3, u2), ProtocolViolation);
  EXPECT_EQ(s.ledger().cnq_count, 2u);
}

TEST(Session, SummaryOfRevealedGraphIsClean) {
  SyntheticTeacher teacher = scripted_teacher({0, 0, 1});
  Session s(teacher);
  for (int i = 0; i < 3; ++i) {
    s.next_vertex();
    const DomainPolicy p = summarize(teacher.revealed_graph());
    EXPECT_TRUE(s.hypothesis_test(p.summary, p.assignment).empty());
  }
  EXPECT_EQ(s.ledger().htq_count, 3u);
  EXPECT_EQ(s.ledger().per_round.size(), 3u);
}

TEST(Session, ReducibleHypothesisViolatesSc1) {
  SyntheticTeacher teacher = scripted_teacher({0});
  Session s(teacher);
  const VertexId u = s.next_vertex();
  const LabeledDigraph h = make_graph(1, {u, 50}, {});
  try {
    s.hypothesis_test(h, {{u, u}});
    FAIL() << "expected a violation";
  } catch (const CriterionViolation& e) {
    EXPECT_EQ(e.criterion(), Criterion::SC1);
  }
  EXPECT_EQ(s.ledger().htq_count, 0u);
}

TEST(Session, NonSurjectiveHypothesisViolatesSc1) {
  SyntheticTeacher teacher = scripted_teacher({0});
  Session s(teacher);
  const VertexId u = s.next_vertex();
  const LabeledDigraph h = make_graph(1, {u, 50}, {{u, 0, 50}});
  EXPECT_THROW(s.hypothesis_test(h, {{u, u}}), CriterionViolation);
}

TEST(Session, AssignmentDomainMustMatchRevealedSet) {
  SyntheticTeacher teacher = scripted_teacher({0, 0});
  Session s(teacher);
  const VertexId u = s.next_vertex();
  const LabeledDigraph h = make_graph(1, {u}, {});
  EXPECT_THROW(s.hypothesis_test(h, {}), ProtocolViolation);
  EXPECT_THROW(s.hypothesis_test(h, {{u, u}, {9, u}}), ProtocolViolation);
  EXPECT_THROW(s.hypothesis_test(h, {{u, 7}}), ProtocolViolation);
}

TEST(Session, ErrorsAccumulate) {
  // Ground truth over three revealed vertices: (0,r,2) and (1,r,2).
  SyntheticTeacher teacher = scripted_teacher({0, 0, 1});
  Session s(teacher);
  for (int i = 0; i < 3; ++i) {
    s.next_vertex();
    const DomainPolicy p = summarize(teacher.revealed_graph());
    s.hypothesis_test(p.summary, p.assignment);
  }
  ASSERT_EQ(teacher.revealed_graph(), make_graph(1, {0, 1, 2}, {{0, 0, 2}, {1, 0, 2}}));
  // Two edgeless summary vertices are indistinguishable, so this is refused.
  EXPECT_THROW(s.hypothesis_test(make_graph(1, {0, 2}, {}), {{0, 0}, {1, 0}, {2, 2}}),
               CriterionViolation);
  // A loop on 2 makes the hypothesis irreducible and wrong in three places.
  const ErrorSet errors =
      s.hypothesis_test(make_graph(1, {0, 2}, {{2, 0, 2}}), {{0, 0}, {1, 0}, {2, 2}});
  EXPECT_EQ(errors.size(), 3u);
  EXPECT_EQ(errors.count(ErrorKind::Deny), 2u);
  EXPECT_EQ(errors.count(ErrorKind::Grant), 1u);
  EXPECT_TRUE(errors.contains(2, 0, 2));
  EXPECT_EQ(s.ledger().errors_cumulative, 3u);
  ASSERT_FALSE(s.ledger().htq_log.empty());
  EXPECT_EQ(s.ledger().htq_log.back().error_count, 3u);
  EXPECT_EQ(s.ledger().htq_log.back().round, 3u);
}

TEST(Session, OneSnapshotPerRound) {
  SyntheticTeacher teacher = scripted_teacher({0, 1});
  Session s(teacher);
  const VertexId u0 = s.next_vertex();
  s.hypothesis_test(make_graph(1, {u0}, {}), {{u0, u0}});
  s.hypothesis_test(make_graph(1, {u0}, {}), {{u0, u0}});
  EXPECT_EQ(s.ledger().per_round.size(), 1u);
  EXPECT_EQ(s.ledger().htq_count, 2u);
}
