#pragma once

// Brute-force reference implementations for validating the summarizer and
// the learners. Nothing here is on the measured path of an experiment.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "domlearn/digraph.hpp"
#include "domlearn/learners.hpp"

namespace domlearn {

class OracleRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kOraclePartitionLimit = 256;
inline constexpr std::size_t kIsomorphismLimit = 12;

/// Pairwise indistinguishability from a dense adjacency cube: x and y are
/// related iff adj(x, z) == adj(y, z) for every vertex z. Classes ordered by
/// minimum id, members sorted.
std::vector<std::vector<VertexId>> oracle_partition(
    const LabeledDigraph& g, std::size_t limit = kOraclePartitionLimit);

struct InvariantCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct InvariantReport {
  std::vector<InvariantCheck> checks;

  bool all_passed() const;
  /// nullptr when every check passed.
  const InvariantCheck* first_failure() const;
  bool passed(const std::string& name) const;
};

/// Check names, in report order.
namespace invariant {
inline constexpr const char* kDomain = "assignment-domain";
inline constexpr const char* kSubgraph = "INV-1 subgraph";
inline constexpr const char* kHomomorphism = "INV-1 strong-homomorphism";
inline constexpr const char* kIrreducible = "INV-1 irreducible";
inline constexpr const char* kPartition = "INV-2(a) partition";
inline constexpr const char* kSurjective = "INV-2(b) surjective";
inline constexpr const char* kClassify = "INV-3(a) classify";
inline constexpr const char* kLeafCount = "INV-3(b) leaf-count";
}  // namespace invariant

/// Evaluates the Conservative Learner's loop invariants against ground
/// truth G[U]. Classification is replayed against g_u's edges directly.
InvariantReport check_round_invariants(const LabeledDigraph& g_u,
                                       const ConservativeState& state);

/// Edge-label-preserving bijection search for small digraphs.
bool isomorphic_small(const LabeledDigraph& lhs, const LabeledDigraph& rhs,
                      std::size_t limit = kIsomorphismLimit);

}  // namespace domlearn
