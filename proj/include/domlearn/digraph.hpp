#pragma once

// Edge-labelled directed graphs used both for access-control matrices and
// for the domain summaries that enforce them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace domlearn {

using VertexId = std::uint32_t;
using RightId = std::uint32_t;

/// Total map from vertices of an access-control matrix to summary vertices.
using Assignment = std::map<VertexId, VertexId>;

/// A named access right; indices are dense in [0, k).
struct AccessRight {
  RightId index = 0;
  std::string name;
};

/// The fixed alphabet of access rights. Names are unique.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  /// Rights named r0, r1, ..., r{k-1}.
  static Alphabet with_size(std::size_t k);

  std::size_t size() const { return names_.size(); }
  const std::string& name(RightId a) const;
  AccessRight right(RightId a) const { return {a, name(a)}; }
  /// Throws std::invalid_argument for an unknown name.
  RightId index_of(std::string_view name) const;
  bool has_default_names() const;

  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

/// A request (source, right, target); also the triple form of an edge.
struct AccessRequest {
  VertexId source = 0;
  RightId right = 0;
  VertexId target = 0;

  friend auto operator<=>(const AccessRequest&, const AccessRequest&) = default;
};

using Edge = AccessRequest;

/// Signed right set adj(u, v): forward holds a for every (u,a,v), backward
/// holds a for every (v,a,u). Both vectors are sorted.
struct AdjacencySignature {
  std::vector<RightId> forward;
  std::vector<RightId> backward;

  bool empty() const { return forward.empty() && backward.empty(); }
  friend bool operator==(const AdjacencySignature&,
                         const AdjacencySignature&) = default;
};

class LabeledDigraph {
 public:
  struct Arc {
    RightId right;
    VertexId other;
  };

  LabeledDigraph() = default;
  explicit LabeledDigraph(Alphabet alphabet);
  LabeledDigraph(Alphabet alphabet, const std::vector<VertexId>& vertices);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }

  /// Returns false if the vertex already exists.
  bool add_vertex(VertexId v);
  bool has_vertex(VertexId v) const { return slot_.contains(v); }

  /// Both endpoints must exist and a < k; returns false on a duplicate.
  bool add_edge(VertexId u, RightId a, VertexId v);
  bool add_edge(const Edge& e) { return add_edge(e.source, e.right, e.target); }
  bool remove_edge(VertexId u, RightId a, VertexId v);
  bool has_edge(VertexId u, RightId a, VertexId v) const;
  bool has_edge(const Edge& e) const {
    return has_edge(e.source, e.right, e.target);
  }

  /// Sorted ascending.
  const std::vector<VertexId>& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  /// All edges in (source, right, target) order.
  std::vector<Edge> edges() const;

  const std::vector<Arc>& out_arcs(VertexId u) const;
  const std::vector<Arc>& in_arcs(VertexId v) const;

  friend bool operator==(const LabeledDigraph& lhs, const LabeledDigraph& rhs);

 private:
  struct Slot {
    std::vector<Arc> out;
    std::vector<Arc> in;
  };

  static std::uint64_t key(VertexId u, VertexId v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  const Slot& slot_of(VertexId v) const;

  Alphabet alphabet_;
  std::vector<VertexId> vertices_;
  std::unordered_map<VertexId, std::size_t> slot_;
  std::vector<Slot> slots_;
  // one set of packed (u, v) pairs per right
  std::vector<std::unordered_set<std::uint64_t>> by_right_;
  std::size_t edge_count_ = 0;
};

/// A domain-based policy: summary digraph plus domain assignment.
struct DomainPolicy {
  LabeledDigraph summary;
  Assignment assignment;
};

enum class ErrorKind { Grant, Deny };

struct PolicyError {
  AccessRequest request;
  ErrorKind kind;

  friend bool operator==(const PolicyError&, const PolicyError&) = default;
};

/// Grant/deny errors of a policy against a ground-truth digraph, sorted by
/// (source, right, target).
class ErrorSet {
 public:
  ErrorSet() = default;
  /// Entries must be sorted and free of duplicate requests.
  explicit ErrorSet(std::vector<PolicyError> errors);

  bool empty() const { return errors_.empty(); }
  std::size_t size() const { return errors_.size(); }
  bool contains(VertexId u, RightId a, VertexId v) const;
  std::size_t count(ErrorKind kind) const;

  auto begin() const { return errors_.begin(); }
  auto end() const { return errors_.end(); }
  const std::vector<PolicyError>& entries() const { return errors_; }

 private:
  std::vector<PolicyError> errors_;
};

AdjacencySignature adjacency_signature(const LabeledDigraph& g, VertexId u,
                                       VertexId v);

/// u and v are indistinguishable: for every right the four edges among
/// {u, v} agree, and u and v have the same labelled adjacency toward every
/// other vertex. O(|V| k).
bool indistinguishable(const LabeledDigraph& g, VertexId u, VertexId v);

/// Classes of the indistinguishability relation, ordered by minimum id with
/// members sorted.
std::vector<std::vector<VertexId>> equivalence_partition(
    const LabeledDigraph& g);

LabeledDigraph induced_subgraph(const LabeledDigraph& g,
                                const std::vector<VertexId>& subset);

/// True iff (u,a,v) in G <=> (pi(u),a,pi(v)) in H for all u, v, a.
bool is_strong_homomorphism(const LabeledDigraph& g, const LabeledDigraph& h,
                            const Assignment& pi);

bool is_irreducible(const LabeledDigraph& h);

/// True iff every edge of sub is an edge of g and V(sub) is a subset of V(g).
bool is_subgraph(const LabeledDigraph& sub, const LabeledDigraph& g);

ErrorSet error_set(const LabeledDigraph& g, const DomainPolicy& policy);
ErrorSet error_set(const LabeledDigraph& g, const LabeledDigraph& h,
                   const Assignment& pi);

/// Image of an assignment, sorted.
std::vector<VertexId> range_of(const Assignment& pi);

}  // namespace domlearn
