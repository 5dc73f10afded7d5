#include "domlearn/protocol.hpp"

#include <algorithm>

namespace domlearn {

const char* to_string(Criterion c) {
  return c == Criterion::SC1 ? "SC-1" : "SC-2";
}

CriterionViolation::CriterionViolation(Criterion criterion, std::size_t round,
                                       const std::string& what)
    : std::logic_error(std::string(to_string(criterion)) + " violated in round " +
                       std::to_string(round) + ": " + what),
      criterion_(criterion),
      round_(round) {}

Session::Session(Teacher& teacher) : teacher_(teacher) {}

void Session::require_revealed(VertexId v) const {
  if (!revealed_.contains(v)) {
    throw ProtocolViolation("vertex " + std::to_string(v) +
                            " has not been revealed");
  }
}

VertexId Session::next_vertex() {
  if (phase_ == Phase::AwaitingClean) {
    throw CriterionViolation(Criterion::SC2, ledger_.nvq_count,
                             "next-vertex query issued before an error-free "
                             "hypothesis test");
  }
  const VertexId u = teacher_.next_vertex();
  if (!revealed_.insert(u).second) {
    throw ProtocolViolation("teacher repeated vertex " + std::to_string(u));
  }
  revealed_order_.push_back(u);
  ++ledger_.nvq_count;
  phase_ = Phase::AwaitingClean;
  return u;
}

bool Session::connection(VertexId u, RightId a, VertexId v) {
  require_revealed(u);
  require_revealed(v);
  if (a >= alphabet().size()) {
    throw ProtocolViolation("right index out of range");
  }
  ++ledger_.cnq_count;
  return teacher_.connection(u, a, v);
}

ErrorSet Session::hypothesis_test(const LabeledDigraph& h,
                                  const Assignment& pi) {
  if (pi.size() != revealed_.size() ||
      !std::all_of(pi.begin(), pi.end(),
                   [&](const auto& kv) { return revealed_.contains(kv.first); })) {
    throw ProtocolViolation("assignment domain differs from the revealed set");
  }
  for (const auto& [v, x] : pi) {
    if (!h.has_vertex(x)) {
      throw ProtocolViolation("assignment maps vertex " + std::to_string(v) +
                              " outside the hypothesis");
    }
  }
  if (h.alphabet_size() != alphabet().size()) {
    throw ProtocolViolation("hypothesis alphabet differs from the teacher's");
  }
  if (!is_irreducible(h)) {
    throw CriterionViolation(Criterion::SC1, ledger_.nvq_count,
                             "hypothesis digraph is reducible");
  }
  if (range_of(pi).size() != h.vertex_count()) {
    throw CriterionViolation(Criterion::SC1, ledger_.nvq_count,
                             "assignment is not surjective");
  }

  ErrorSet errors = teacher_.hypothesis_test(h, pi);
  ++ledger_.htq_count;
  ledger_.errors_cumulative += errors.size();
  ledger_.htq_log.push_back({ledger_.nvq_count, errors.size()});
  if (errors.empty() && phase_ == Phase::AwaitingClean) {
    phase_ = Phase::MayAdvance;
    ledger_.per_round.push_back({ledger_.nvq_count, ledger_.cnq_count,
                                 ledger_.htq_count, ledger_.errors_cumulative});
  }
  return errors;
}

}  // namespace domlearn
