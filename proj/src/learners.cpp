#include "domlearn/learners.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "domlearn/summarize.hpp"

namespace domlearn {

void TirelessLearner::run_round(Session& session) {
  const std::size_t k = session.alphabet().size();
  if (reconstruction_.alphabet_size() != k) {
    reconstruction_ = LabeledDigraph(session.alphabet());
  }
  const VertexId u = session.next_vertex();
  reconstruction_.add_vertex(u);
  const std::vector<VertexId> known = reconstruction_.vertices();
  for (RightId a = 0; a < k; ++a) {
    for (VertexId v : known) {
      if (session.connection(u, a, v)) reconstruction_.add_edge(u, a, v);
    }
    for (VertexId v : known) {
      if (v != u && session.connection(v, a, u)) reconstruction_.add_edge(v, a, u);
    }
  }
  policy_ = summarize(reconstruction_);
  const ErrorSet errors = session.hypothesis_test(policy_.summary, policy_.assignment);
  if (!errors.empty()) {
    throw InternalFailure("tireless: summary of the reconstruction produced " +
                          std::to_string(errors.size()) + " errors");
  }
}

// ---------------------------------------------------------------------------

bool edg(VertexId u, RightId a, VertexId v, const LabeledDigraph& h,
         const Assignment& pi_prime, const ErrorSet& errors) {
  return h.has_edge(pi_prime.at(u), a, pi_prime.at(v)) != errors.contains(u, a, v);
}

ReviseResult revise(const DecisionTree& tree, const LabeledDigraph& h,
                    const Assignment& pi, VertexId u, VertexId w,
                    const ErrorSet& errors, const ReviseObserver& observer,
                    ReviseRule rule) {
  if (errors.empty()) throw InternalFailure("revise: empty error set");
  if (pi.contains(u)) {
    throw InternalFailure("revise: vertex " + std::to_string(u) +
                          " is already assigned");
  }
  if (!h.has_vertex(w)) {
    throw InternalFailure("revise: classification " + std::to_string(w) +
                          " is not a summary vertex");
  }
  {
    std::vector<VertexId> labels = tree.leaf_labels();
    std::sort(labels.begin(), labels.end());
    if (labels != range_of(pi) || labels != h.vertices()) {
      throw InternalFailure("revise: tree leaves, assignment range and summary "
                            "vertices disagree");
    }
  }

  Assignment pi_prime = pi;
  pi_prime[u] = w;
  ReviseResult result{tree, pi_prime, 0, 0};
  const std::size_t k = h.alphabet_size();
  const std::vector<DecisionTree::NodeId> initial = tree.leaves();
  std::deque<DecisionTree::NodeId> worklist(initial.begin(), initial.end());

  while (!worklist.empty()) {
    if (observer) observer({result.tree, result.assignment, worklist, result.iterations});
    const DecisionTree::NodeId leaf = worklist.front();
    worklist.pop_front();
    ++result.iterations;

    const VertexId label = result.tree.label(leaf);
    std::vector<VertexId> part;
    for (const auto& [v, x] : result.assignment) {
      if (x == label) part.push_back(v);
    }

    // Both outcomes of `in_errors` occur within the partition.
    auto discrepant = [&](auto in_errors) {
      bool yes = false;
      bool no = false;
      for (VertexId v : part) (in_errors(v) ? yes : no) = true;
      return yes && no;
    };

    std::optional<DecisionTest> test;
    for (RightId a = 0; a < k && !test; ++a) {
      if (discrepant([&](VertexId v) { return errors.contains(v, a, u); })) {
        test = DecisionTest::to(a, u);
      }
    }
    for (RightId a = 0; a < k && !test; ++a) {
      if (discrepant([&](VertexId v) { return errors.contains(u, a, v); })) {
        test = DecisionTest::from(u, a);
      }
    }
    const bool holds_u = std::binary_search(part.begin(), part.end(), u);
    for (RightId a = 0; a < k && !test && holds_u; ++a) {
      if (errors.contains(u, a, u) &&
          std::any_of(part.begin(), part.end(),
                      [&](VertexId v) { return !errors.contains(v, a, v); })) {
        test = DecisionTest::loop(a);
      }
    }
    // u against the old members, through a vertex outside the partition. The
    // old members agree on every such edge, so one error is enough.
    if (!test && rule == ReviseRule::Extended && holds_u && part.size() > 1) {
      const std::vector<VertexId> outside = [&] {
        std::vector<VertexId> xs;
        for (const auto& [v, x] : result.assignment) {
          if (x != label) xs.push_back(v);
        }
        return xs;
      }();
      for (RightId a = 0; a < k && !test; ++a) {
        for (VertexId x : outside) {
          if (errors.contains(u, a, x)) {
            test = DecisionTest::to(a, x);
            break;
          }
        }
      }
      for (RightId a = 0; a < k && !test; ++a) {
        for (VertexId x : outside) {
          if (errors.contains(x, a, u)) {
            test = DecisionTest::from(x, a);
            break;
          }
        }
      }
    }
    if (!test) continue;

    std::vector<VertexId> plus;
    std::vector<VertexId> minus;
    for (VertexId v : part) {
      const AccessRequest q = test->request_for(v);
      (edg(q.source, q.right, q.target, h, pi_prime, errors) ? plus : minus)
          .push_back(v);
    }
    if (plus.empty() || minus.empty()) {
      throw InternalFailure("revise: discrepancy did not split partition of " +
                            std::to_string(label));
    }
    const auto [yes_leaf, no_leaf] =
        result.tree.split(leaf, *test, plus.front(), minus.front());
    for (VertexId v : plus) result.assignment[v] = plus.front();
    for (VertexId v : minus) result.assignment[v] = minus.front();
    worklist.push_back(yes_leaf);
    worklist.push_back(no_leaf);
    ++result.splits;
  }
  if (observer) observer({result.tree, result.assignment, worklist, result.iterations});

  if (result.splits == 0) {
    throw InternalFailure("revise: errors reported for vertex " +
                          std::to_string(u) +
                          " but no partition shows a discrepancy");
  }
  if (result.iterations > 2 * result.tree.leaf_count()) {
    throw InternalFailure("revise: worklist ran " +
                          std::to_string(result.iterations) +
                          " iterations for " +
                          std::to_string(result.tree.leaf_count()) + " leaves");
  }
  return result;
}

// ---------------------------------------------------------------------------

ErrorSet ConservativeLearner::submit(Session& session, const LabeledDigraph& h,
                                     const Assignment& pi) const {
  if (fault_ != LearnerFault::ReducibleHypothesis) {
    return session.hypothesis_test(h, pi);
  }
  // Add an unused twin of the first summary vertex.
  LabeledDigraph padded = h;
  const VertexId original = h.vertices().front();
  const VertexId twin = h.vertices().back() + 1;
  padded.add_vertex(twin);
  for (RightId a = 0; a < h.alphabet_size(); ++a) {
    const bool loop = h.has_edge(original, a, original);
    for (VertexId x : h.vertices()) {
      if (x == original) continue;
      if (h.has_edge(original, a, x)) padded.add_edge(twin, a, x);
      if (h.has_edge(x, a, original)) padded.add_edge(x, a, twin);
    }
    if (loop) {
      padded.add_edge(twin, a, twin);
      padded.add_edge(twin, a, original);
      padded.add_edge(original, a, twin);
    }
  }
  return session.hypothesis_test(padded, pi);
}

void ConservativeLearner::init(Session& session) {
  if (state_) throw std::logic_error("conservative: already initialized");
  const VertexId u = session.next_vertex();
  LabeledDigraph h(session.alphabet(), {u});
  for (RightId a = 0; a < session.alphabet().size(); ++a) {
    if (session.connection(u, a, u)) h.add_edge(u, a, u);
  }
  state_.emplace(ConservativeState{std::move(h), Assignment{{u, u}}, DecisionTree(u)});
  const ErrorSet errors = submit(session, state_->summary, state_->assignment);
  if (!errors.empty()) {
    throw InternalFailure("conservative: initial hypothesis produced errors");
  }
}

void ConservativeLearner::round(Session& session) {
  if (!state_) throw std::logic_error("conservative: round before init");
  ConservativeState& st = *state_;

  const VertexId u = session.next_vertex();
  const VertexId w = st.tree.classify(u, [&](VertexId x, RightId a, VertexId y) {
    return session.connection(x, a, y);
  });
  Assignment pi_prime = st.assignment;
  pi_prime[u] = w;
  const ErrorSet errors = submit(session, st.summary, pi_prime);
  if (errors.empty()) {
    st.assignment = std::move(pi_prime);
    return;
  }

  Assignment revised;
  DecisionTree tree = st.tree;
  if (fault_ == LearnerFault::SkipRevise) {
    revised = pi_prime;
  } else {
    ReviseResult r = revise(st.tree, st.summary, st.assignment, u, w, errors, observer_);
    revised = std::move(r.assignment);
    tree = std::move(r.tree);
  }

  // Edges among the new representatives, read off the frozen (H, pi', errors).
  const std::vector<VertexId> representatives = range_of(revised);
  LabeledDigraph h(session.alphabet(), representatives);
  for (VertexId x : representatives) {
    for (RightId a = 0; a < session.alphabet().size(); ++a) {
      for (VertexId y : representatives) {
        if (edg(x, a, y, st.summary, pi_prime, errors)) h.add_edge(x, a, y);
      }
    }
  }
  st = ConservativeState{std::move(h), std::move(revised), std::move(tree)};

  const ErrorSet remaining = submit(session, st.summary, st.assignment);
  if (!remaining.empty() && fault_ == LearnerFault::None) {
    throw InternalFailure("conservative: revised hypothesis still has " +
                          std::to_string(remaining.size()) + " errors");
  }
}

void ConservativeLearner::run_round(Session& session) {
  if (state_) {
    round(session);
  } else {
    init(session);
  }
}

DomainPolicy ConservativeLearner::policy() const {
  if (!state_) return {};
  return {state_->summary, state_->assignment};
}

}  // namespace domlearn
