#include "domlearn/digraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace domlearn {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("alphabet: duplicate right name");
  }
  for (const auto& n : names_) {
    if (n.empty() || n.find_first_of(" \t\r\n") != std::string::npos) {
      throw std::invalid_argument("alphabet: right names must be non-empty "
                                  "and free of whitespace");
    }
  }
}

Alphabet Alphabet::with_size(std::size_t k) {
  std::vector<std::string> names;
  names.reserve(k);
  for (std::size_t i = 0; i < k; ++i) names.push_back("r" + std::to_string(i));
  return Alphabet(std::move(names));
}

const std::string& Alphabet::name(RightId a) const {
  if (a >= names_.size()) {
    throw std::invalid_argument("alphabet: right index out of range");
  }
  return names_[a];
}

RightId Alphabet::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw std::invalid_argument("alphabet: unknown right '" +
                                std::string(name) + "'");
  }
  return static_cast<RightId>(it - names_.begin());
}

bool Alphabet::has_default_names() const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] != "r" + std::to_string(i)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

LabeledDigraph::LabeledDigraph(Alphabet alphabet)
    : alphabet_(std::move(alphabet)), by_right_(alphabet_.size()) {}

LabeledDigraph::LabeledDigraph(Alphabet alphabet,
                               const std::vector<VertexId>& vertices)
    : LabeledDigraph(std::move(alphabet)) {
  for (VertexId v : vertices) add_vertex(v);
}

bool LabeledDigraph::add_vertex(VertexId v) {
  if (slot_.contains(v)) return false;
  slot_.emplace(v, slots_.size());
  slots_.emplace_back();
  if (vertices_.empty() || vertices_.back() < v) {
    vertices_.push_back(v);
  } else {
    vertices_.insert(std::lower_bound(vertices_.begin(), vertices_.end(), v),
                     v);
  }
  return true;
}

const LabeledDigraph::Slot& LabeledDigraph::slot_of(VertexId v) const {
  auto it = slot_.find(v);
  if (it == slot_.end()) {
    throw std::invalid_argument("digraph: unknown vertex " + std::to_string(v));
  }
  return slots_[it->second];
}

bool LabeledDigraph::add_edge(VertexId u, RightId a, VertexId v) {
  if (a >= alphabet_.size()) {
    throw std::invalid_argument("digraph: right index out of range");
  }
  auto iu = slot_.find(u);
  auto iv = slot_.find(v);
  if (iu == slot_.end() || iv == slot_.end()) {
    throw std::invalid_argument("digraph: edge endpoint is not a vertex");
  }
  if (!by_right_[a].insert(key(u, v)).second) return false;
  slots_[iu->second].out.push_back({a, v});
  slots_[iv->second].in.push_back({a, u});
  ++edge_count_;
  return true;
}

bool LabeledDigraph::remove_edge(VertexId u, RightId a, VertexId v) {
  if (a >= alphabet_.size() || by_right_[a].erase(key(u, v)) == 0) return false;
  auto drop = [](std::vector<Arc>& arcs, RightId r, VertexId other) {
    auto it = std::find_if(arcs.begin(), arcs.end(), [&](const Arc& x) {
      return x.right == r && x.other == other;
    });
    arcs.erase(it);
  };
  drop(slots_[slot_.at(u)].out, a, v);
  drop(slots_[slot_.at(v)].in, a, u);
  --edge_count_;
  return true;
}

bool LabeledDigraph::has_edge(VertexId u, RightId a, VertexId v) const {
  return a < by_right_.size() && by_right_[a].contains(key(u, v));
}

std::vector<Edge> LabeledDigraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (VertexId u : vertices_) {
    for (const Arc& arc : slot_of(u).out) result.push_back({u, arc.right, arc.other});
  }
  std::sort(result.begin(), result.end());
  return result;
}

const std::vector<LabeledDigraph::Arc>& LabeledDigraph::out_arcs(
    VertexId u) const {
  return slot_of(u).out;
}

const std::vector<LabeledDigraph::Arc>& LabeledDigraph::in_arcs(
    VertexId v) const {
  return slot_of(v).in;
}

bool operator==(const LabeledDigraph& lhs, const LabeledDigraph& rhs) {
  return lhs.alphabet_ == rhs.alphabet_ && lhs.vertices_ == rhs.vertices_ &&
         lhs.edge_count_ == rhs.edge_count_ && lhs.by_right_ == rhs.by_right_;
}

// ---------------------------------------------------------------------------

ErrorSet::ErrorSet(std::vector<PolicyError> errors) : errors_(std::move(errors)) {
  for (std::size_t i = 1; i < errors_.size(); ++i) {
    if (!(errors_[i - 1].request < errors_[i].request)) {
      throw std::invalid_argument("error set: entries unsorted or duplicated");
    }
  }
}

bool ErrorSet::contains(VertexId u, RightId a, VertexId v) const {
  const AccessRequest probe{u, a, v};
  auto it = std::lower_bound(
      errors_.begin(), errors_.end(), probe,
      [](const PolicyError& e, const AccessRequest& r) { return e.request < r; });
  return it != errors_.end() && it->request == probe;
}

std::size_t ErrorSet::count(ErrorKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      errors_.begin(), errors_.end(),
      [kind](const PolicyError& e) { return e.kind == kind; }));
}

// ---------------------------------------------------------------------------

namespace {

void require_vertex(const LabeledDigraph& g, VertexId v) {
  if (!g.has_vertex(v)) {
    throw std::invalid_argument("unknown vertex " + std::to_string(v));
  }
}

// Labelled arcs of x whose far end lies outside {u, v}, sorted.
std::vector<std::pair<RightId, VertexId>> arcs_outside(
    const std::vector<LabeledDigraph::Arc>& arcs, VertexId u, VertexId v) {
  std::vector<std::pair<RightId, VertexId>> result;
  result.reserve(arcs.size());
  for (const auto& arc : arcs) {
    if (arc.other != u && arc.other != v) result.emplace_back(arc.right, arc.other);
  }
  std::sort(result.begin(), result.end());
  return result;
}

// Images of pi for the vertices of g in vertex order; validates totality and
// that the range lies inside V(h).
std::vector<VertexId> images(const LabeledDigraph& g, const LabeledDigraph& h,
                             const Assignment& pi) {
  std::vector<VertexId> result;
  result.reserve(g.vertex_count());
  for (VertexId u : g.vertices()) {
    auto it = pi.find(u);
    if (it == pi.end()) {
      throw std::invalid_argument("assignment is not total: vertex " +
                                  std::to_string(u) + " unmapped");
    }
    if (!h.has_vertex(it->second)) {
      throw std::invalid_argument("assignment maps vertex " + std::to_string(u) +
                                  " outside the summary");
    }
    result.push_back(it->second);
  }
  return result;
}

}  // namespace

AdjacencySignature adjacency_signature(const LabeledDigraph& g, VertexId u,
                                       VertexId v) {
  require_vertex(g, u);
  require_vertex(g, v);
  AdjacencySignature sig;
  for (RightId a = 0; a < g.alphabet_size(); ++a) {
    if (g.has_edge(u, a, v)) sig.forward.push_back(a);
    if (g.has_edge(v, a, u)) sig.backward.push_back(a);
  }
  return sig;
}

bool indistinguishable(const LabeledDigraph& g, VertexId u, VertexId v) {
  require_vertex(g, u);
  require_vertex(g, v);
  if (u == v) return true;
  for (RightId a = 0; a < g.alphabet_size(); ++a) {
    const bool uu = g.has_edge(u, a, u);
    if (g.has_edge(u, a, v) != uu || g.has_edge(v, a, u) != uu ||
        g.has_edge(v, a, v) != uu) {
      return false;
    }
  }
  return arcs_outside(g.out_arcs(u), u, v) == arcs_outside(g.out_arcs(v), u, v) &&
         arcs_outside(g.in_arcs(u), u, v) == arcs_outside(g.in_arcs(v), u, v);
}

std::vector<std::vector<VertexId>> equivalence_partition(
    const LabeledDigraph& g) {
  // Indistinguishability is an equivalence, so one comparison against each
  // class's first member decides membership.
  std::vector<std::vector<VertexId>> classes;
  for (VertexId v : g.vertices()) {
    auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) {
      return indistinguishable(g, c.front(), v);
    });
    if (it == classes.end()) {
      classes.push_back({v});
    } else {
      it->push_back(v);
    }
  }
  return classes;
}

LabeledDigraph induced_subgraph(const LabeledDigraph& g,
                                const std::vector<VertexId>& subset) {
  LabeledDigraph result(g.alphabet());
  for (VertexId u : subset) {
    if (!g.has_vertex(u)) {
      throw std::invalid_argument("induced_subgraph: vertex " +
                                  std::to_string(u) + " not in graph");
    }
    result.add_vertex(u);
  }
  for (VertexId u : result.vertices()) {
    for (const auto& arc : g.out_arcs(u)) {
      if (result.has_vertex(arc.other)) result.add_edge(u, arc.right, arc.other);
    }
  }
  return result;
}

bool is_strong_homomorphism(const LabeledDigraph& g, const LabeledDigraph& h,
                            const Assignment& pi) {
  const std::vector<VertexId> image = images(g, h, pi);
  if (g.alphabet_size() != h.alphabet_size()) return false;

  // Every G-edge must land on an H-edge, and every H-edge (x,a,y) must be hit
  // by all |C(x)| * |C(y)| pairs of its preimage classes.
  std::map<VertexId, std::size_t> class_size;
  for (VertexId x : image) ++class_size[x];
  std::map<Edge, std::size_t> hits;
  for (VertexId u : g.vertices()) {
    const VertexId pu = pi.at(u);
    for (const auto& arc : g.out_arcs(u)) {
      const Edge target{pu, arc.right, pi.at(arc.other)};
      if (!h.has_edge(target)) return false;
      ++hits[target];
    }
  }
  for (const Edge& e : h.edges()) {
    auto sx = class_size.find(e.source);
    auto sy = class_size.find(e.target);
    if (sx == class_size.end() || sy == class_size.end()) continue;
    auto it = hits.find(e);
    const std::size_t got = it == hits.end() ? 0 : it->second;
    if (got != sx->second * sy->second) return false;
  }
  return true;
}

bool is_irreducible(const LabeledDigraph& h) {
  const auto& vs = h.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (indistinguishable(h, vs[i], vs[j])) return false;
    }
  }
  return true;
}

bool is_subgraph(const LabeledDigraph& sub, const LabeledDigraph& g) {
  if (sub.alphabet_size() != g.alphabet_size()) return false;
  for (VertexId v : sub.vertices()) {
    if (!g.has_vertex(v)) return false;
  }
  for (VertexId u : sub.vertices()) {
    for (const auto& arc : sub.out_arcs(u)) {
      if (!g.has_edge(u, arc.right, arc.other)) return false;
    }
  }
  return true;
}

ErrorSet error_set(const LabeledDigraph& g, const LabeledDigraph& h,
                   const Assignment& pi) {
  const std::vector<VertexId> image = images(g, h, pi);
  if (g.alphabet_size() != h.alphabet_size()) {
    throw std::invalid_argument("error_set: alphabet size mismatch");
  }
  const auto& vs = g.vertices();
  std::vector<PolicyError> errors;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (RightId a = 0; a < g.alphabet_size(); ++a) {
      for (std::size_t j = 0; j < vs.size(); ++j) {
        const bool allowed = h.has_edge(image[i], a, image[j]);
        const bool truth = g.has_edge(vs[i], a, vs[j]);
        if (allowed != truth) {
          errors.push_back({{vs[i], a, vs[j]},
                            allowed ? ErrorKind::Grant : ErrorKind::Deny});
        }
      }
    }
  }
  return ErrorSet(std::move(errors));
}

ErrorSet error_set(const LabeledDigraph& g, const DomainPolicy& policy) {
  return error_set(g, policy.summary, policy.assignment);
}

std::vector<VertexId> range_of(const Assignment& pi) {
  std::vector<VertexId> result;
  result.reserve(pi.size());
  for (const auto& [v, x] : pi) result.push_back(x);
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

}  // namespace domlearn
