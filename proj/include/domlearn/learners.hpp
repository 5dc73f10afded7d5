#pragma once

// Policy-administration strategies driven one round at a time.
//
// TirelessLearner asks every connection query of the growing matrix and
// summarizes it. ConservativeLearner assumes each new vertex belongs to a
// known domain, classifies it with a decision tree, and repairs the tree and
// policy from the hypothesis-test errors when the assumption fails.

#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "domlearn/decision_tree.hpp"
#include "domlearn/digraph.hpp"
#include "domlearn/protocol.hpp"

namespace domlearn {

/// A learner broke its own algorithmic contract (e.g. a hypothesis that
/// should be exact returned errors).
class InternalFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Learner {
 public:
  virtual ~Learner() = default;
  /// One NVQ followed by CNQs and HTQs, ending in an error-free HTQ.
  virtual void run_round(Session& session) = 0;
  virtual DomainPolicy policy() const = 0;
  virtual std::string_view name() const = 0;
};

class TirelessLearner final : public Learner {
 public:
  void run_round(Session& session) override;
  DomainPolicy policy() const override { return policy_; }
  std::string_view name() const override { return "tireless"; }

  /// The learner's reconstruction of G[U].
  const LabeledDigraph& reconstruction() const { return reconstruction_; }

 private:
  LabeledDigraph reconstruction_;
  DomainPolicy policy_;
};

/// Decides (u, a, v) in G[U] from a hypothesis and its error set:
/// ((pi'(u), a, pi'(v)) in E(H)) xor ((u, a, v) in errors).
bool edg(VertexId u, RightId a, VertexId v, const LabeledDigraph& h,
         const Assignment& pi_prime, const ErrorSet& errors);

struct ConservativeState {
  LabeledDigraph summary;
  Assignment assignment;
  DecisionTree tree;
};

/// View of the tree-revision loop at the top of each iteration and once
/// after the worklist drains.
struct ReviseSnapshot {
  const DecisionTree& tree;
  const Assignment& assignment;
  const std::deque<DecisionTree::NodeId>& worklist;
  std::size_t iteration;
};

using ReviseObserver = std::function<void(const ReviseSnapshot&)>;

struct ReviseResult {
  DecisionTree tree;
  Assignment assignment;
  std::size_t iterations = 0;
  std::size_t splits = 0;
};

/// Which splits revise may make.
///
/// Literal only compares members of a partition through their edges with u
/// (to(a,u), from(u,a), loop(a)). That misses a new vertex that differs from
/// its partition only in its edges with some vertex x outside the partition,
/// e.g. an old x with (x,a,old) but not (x,a,u). Extended adds a last check
/// for such an error and splits on to(a,x) or from(x,a).
enum class ReviseRule { Extended, Literal };

/// Splits the partitions of pi[u -> w] until they agree with
/// indistinguishability in G[U], using only the error set. Leaves are
/// processed FIFO starting from the left-to-right leaf order; each partition
/// is checked for a to-, then from-, then loop-discrepancy, rights in
/// ascending order (then, under Extended, for an error between u and an
/// outside vertex x: to(a,x) before from(x,a), rights then x ascending); new
/// leaves take the minimum id of their part. Issues no connection queries.
/// Throws InternalFailure if the input contract is violated or no split
/// explains the errors.
ReviseResult revise(const DecisionTree& tree, const LabeledDigraph& h,
                    const Assignment& pi, VertexId u, VertexId w,
                    const ErrorSet& errors, const ReviseObserver& observer = {},
                    ReviseRule rule = ReviseRule::Extended);

/// Deliberate defects used to check that the monitor and oracle catch them.
enum class LearnerFault { None, SkipRevise, ReducibleHypothesis };

class ConservativeLearner final : public Learner {
 public:
  explicit ConservativeLearner(LearnerFault fault = LearnerFault::None)
      : fault_(fault) {}

  /// First round: probe the self-loops of the first vertex.
  void init(Session& session);
  /// Any later round.
  void round(Session& session);

  void run_round(Session& session) override;
  DomainPolicy policy() const override;
  std::string_view name() const override { return "conservative"; }

  const std::optional<ConservativeState>& state() const { return state_; }
  void set_revise_observer(ReviseObserver observer) {
    observer_ = std::move(observer);
  }

 private:
  ErrorSet submit(Session& session, const LabeledDigraph& h,
                  const Assignment& pi) const;

  LearnerFault fault_;
  std::optional<ConservativeState> state_;
  ReviseObserver observer_;
};

}  // namespace domlearn
