#pragma once

// The three-query teacher/learner protocol and its monitor.
//
// A Session sits between a learner and a Teacher. It forwards next-vertex
// (NVQ), connection (CNQ) and hypothesis-testing (HTQ) queries, owns the
// cost ledger, and enforces the two success criteria:
//
//   SC-1  every HTQ hypothesis is irreducible with a surjective assignment;
//   SC-2  after an NVQ, some HTQ must return no errors before the next NVQ.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "domlearn/digraph.hpp"

namespace domlearn {

class Teacher {
 public:
  virtual ~Teacher() = default;

  virtual const Alphabet& alphabet() const = 0;
  /// A never-before-seen vertex. May throw TeacherExhausted.
  virtual VertexId next_vertex() = 0;
  virtual bool connection(VertexId u, RightId a, VertexId v) = 0;
  /// Errors of (h, pi) over the subgraph induced by the revealed vertices.
  virtual ErrorSet hypothesis_test(const LabeledDigraph& h,
                                   const Assignment& pi) = 0;
};

/// The teacher has no further vertices to reveal.
class TeacherExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A query that breaks the protocol contract (unrevealed vertex, wrong
/// assignment domain, ...).
class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Criterion { SC1, SC2 };

class CriterionViolation : public std::logic_error {
 public:
  CriterionViolation(Criterion criterion, std::size_t round,
                     const std::string& what);
  Criterion criterion() const { return criterion_; }
  std::size_t round() const { return round_; }

 private:
  Criterion criterion_;
  std::size_t round_;
};

struct RoundSnapshot {
  std::size_t n = 0;
  std::size_t cnq_cumulative = 0;
  std::size_t htq_cumulative = 0;
  std::size_t errors_cumulative = 0;

  friend bool operator==(const RoundSnapshot&, const RoundSnapshot&) = default;
};

/// One hypothesis test as seen by the monitor.
struct HtqRecord {
  std::size_t round = 0;
  std::size_t error_count = 0;
};

struct QueryLedger {
  std::size_t nvq_count = 0;
  std::size_t cnq_count = 0;
  std::size_t htq_count = 0;
  std::size_t errors_cumulative = 0;
  std::vector<RoundSnapshot> per_round;
  std::vector<HtqRecord> htq_log;
};

enum class Phase { AwaitingClean, MayAdvance };

class Session {
 public:
  explicit Session(Teacher& teacher);

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  VertexId next_vertex();
  bool connection(VertexId u, RightId a, VertexId v);
  ErrorSet hypothesis_test(const LabeledDigraph& h, const Assignment& pi);

  const Alphabet& alphabet() const { return teacher_.alphabet(); }
  const QueryLedger& ledger() const { return ledger_; }
  Phase phase() const { return phase_; }
  /// Revealed vertices in order of revelation.
  const std::vector<VertexId>& revealed() const { return revealed_order_; }
  bool is_revealed(VertexId v) const { return revealed_.contains(v); }
  std::size_t round() const { return ledger_.nvq_count; }

 private:
  void require_revealed(VertexId v) const;

  Teacher& teacher_;
  QueryLedger ledger_;
  Phase phase_ = Phase::MayAdvance;
  std::vector<VertexId> revealed_order_;
  std::unordered_set<VertexId> revealed_;
};

const char* to_string(Criterion c);

}  // namespace domlearn
