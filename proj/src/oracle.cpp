#include "domlearn/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace domlearn {

namespace {

// cube[(a * n + i) * n + j] == (v_i, a, v_j) in E, indices into the sorted
// vertex list.
class DenseCube {
 public:
  explicit DenseCube(const LabeledDigraph& g)
      : n_(g.vertex_count()),
        k_(g.alphabet_size()),
        bits_(k_ * n_ * n_, false) {
    const auto& vs = g.vertices();
    std::map<VertexId, std::size_t> index;
    for (std::size_t i = 0; i < vs.size(); ++i) index[vs[i]] = i;
    for (const Edge& e : g.edges()) {
      bits_[(e.right * n_ + index.at(e.source)) * n_ + index.at(e.target)] = true;
    }
  }

  bool at(std::size_t a, std::size_t i, std::size_t j) const {
    return bits_[(a * n_ + i) * n_ + j];
  }
  std::size_t size() const { return n_; }
  std::size_t rights() const { return k_; }

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<bool> bits_;
};

}  // namespace

std::vector<std::vector<VertexId>> oracle_partition(const LabeledDigraph& g,
                                                    std::size_t limit) {
  if (g.vertex_count() > limit) {
    throw OracleRefused("oracle_partition: " + std::to_string(g.vertex_count()) +
                        " vertices exceeds limit " + std::to_string(limit));
  }
  const DenseCube cube(g);
  const std::size_t n = cube.size();
  auto related = [&](std::size_t x, std::size_t y) {
    for (std::size_t z = 0; z < n; ++z) {
      for (std::size_t a = 0; a < cube.rights(); ++a) {
        if (cube.at(a, x, z) != cube.at(a, y, z)) return false;
        if (cube.at(a, z, x) != cube.at(a, z, y)) return false;
      }
    }
    return true;
  };

  const auto& vs = g.vertices();
  std::vector<bool> placed(n, false);
  std::vector<std::vector<VertexId>> classes;
  for (std::size_t x = 0; x < n; ++x) {
    if (placed[x]) continue;
    std::vector<VertexId> cls{vs[x]};
    placed[x] = true;
    for (std::size_t y = x + 1; y < n; ++y) {
      if (!placed[y] && related(x, y)) {
        cls.push_back(vs[y]);
        placed[y] = true;
      }
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

// ---------------------------------------------------------------------------

bool InvariantReport::all_passed() const { return first_failure() == nullptr; }

const InvariantCheck* InvariantReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

bool InvariantReport::passed(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c.passed;
  }
  return false;
}

InvariantReport check_round_invariants(const LabeledDigraph& g_u,
                                       const ConservativeState& state) {
  InvariantReport report;
  auto add = [&](const char* name, bool ok, std::string detail = {}) {
    report.checks.push_back({name, ok, ok ? std::string() : std::move(detail)});
  };
  const LabeledDigraph& h = state.summary;
  const Assignment& pi = state.assignment;

  std::vector<VertexId> domain;
  for (const auto& [v, x] : pi) domain.push_back(v);
  const bool domain_ok = domain == g_u.vertices() &&
                         std::all_of(pi.begin(), pi.end(), [&](const auto& kv) {
                           return h.has_vertex(kv.second);
                         });
  add(invariant::kDomain, domain_ok,
      "assignment is not a total map from G[U] into V(H)");

  bool subgraph = h.alphabet_size() == g_u.alphabet_size();
  for (VertexId x : h.vertices()) subgraph = subgraph && g_u.has_vertex(x);
  for (const Edge& e : h.edges()) subgraph = subgraph && g_u.has_edge(e);
  add(invariant::kSubgraph, subgraph, "H is not a subgraph of G[U]");

  std::string hom_detail;
  bool hom = domain_ok;
  if (hom) {
    for (VertexId x : g_u.vertices()) {
      for (RightId a = 0; a < g_u.alphabet_size() && hom; ++a) {
        for (VertexId y : g_u.vertices()) {
          if (g_u.has_edge(x, a, y) != h.has_edge(pi.at(x), a, pi.at(y))) {
            hom = false;
            hom_detail = "request (" + std::to_string(x) + "," + std::to_string(a) +
                         "," + std::to_string(y) + ") decided wrongly";
            break;
          }
        }
      }
      if (!hom) break;
    }
  } else {
    hom_detail = "assignment not total";
  }
  add(invariant::kHomomorphism, hom, hom_detail);

  add(invariant::kIrreducible, oracle_partition(h).size() == h.vertex_count(),
      "H has indistinguishable vertices");

  std::map<VertexId, std::vector<VertexId>> by_image;
  for (const auto& [v, x] : pi) by_image[x].push_back(v);
  std::vector<std::vector<VertexId>> induced;
  for (auto& [x, members] : by_image) induced.push_back(members);
  std::sort(induced.begin(), induced.end());
  add(invariant::kPartition, induced == oracle_partition(g_u),
      "assignment partition differs from indistinguishability classes");

  add(invariant::kSurjective, range_of(pi) == h.vertices(),
      "range of assignment differs from V(H)");

  bool classify_ok = true;
  std::string classify_detail;
  for (VertexId v : g_u.vertices()) {
    const VertexId got = state.tree.classify(
        v, [&](VertexId x, RightId a, VertexId y) { return g_u.has_edge(x, a, y); });
    auto it = pi.find(v);
    if (it == pi.end() || it->second != got) {
      classify_ok = false;
      classify_detail = "tree classifies " + std::to_string(v) + " to " +
                        std::to_string(got);
      break;
    }
  }
  add(invariant::kClassify, classify_ok, classify_detail);

  add(invariant::kLeafCount, state.tree.leaf_count() == range_of(pi).size(),
      "leaf count " + std::to_string(state.tree.leaf_count()) + " vs " +
          std::to_string(range_of(pi).size()) + " representatives");
  return report;
}

// ---------------------------------------------------------------------------

namespace {

// Loop rights, out- and in-label counts of a vertex.
using VertexProfile =
    std::tuple<std::vector<bool>, std::vector<std::size_t>, std::vector<std::size_t>>;

VertexProfile profile(const LabeledDigraph& g, VertexId v) {
  const std::size_t k = g.alphabet_size();
  VertexProfile p{std::vector<bool>(k, false), std::vector<std::size_t>(k, 0),
                  std::vector<std::size_t>(k, 0)};
  for (const auto& arc : g.out_arcs(v)) {
    ++std::get<1>(p)[arc.right];
    if (arc.other == v) std::get<0>(p)[arc.right] = true;
  }
  for (const auto& arc : g.in_arcs(v)) ++std::get<2>(p)[arc.right];
  return p;
}

struct IsoSearch {
  const LabeledDigraph& lhs;
  const LabeledDigraph& rhs;
  std::vector<VertexProfile> lhs_profile;
  std::vector<VertexProfile> rhs_profile;
  std::vector<std::size_t> mapping;  // lhs index -> rhs index
  std::vector<bool> used;

  bool consistent(std::size_t i, std::size_t j) const {
    const auto& lv = lhs.vertices();
    const auto& rv = rhs.vertices();
    for (std::size_t p = 0; p < i; ++p) {
      const std::size_t q = mapping[p];
      for (RightId a = 0; a < lhs.alphabet_size(); ++a) {
        if (lhs.has_edge(lv[i], a, lv[p]) != rhs.has_edge(rv[j], a, rv[q])) return false;
        if (lhs.has_edge(lv[p], a, lv[i]) != rhs.has_edge(rv[q], a, rv[j])) return false;
      }
    }
    return true;
  }

  bool extend(std::size_t i) {
    if (i == mapping.size()) return true;
    for (std::size_t j = 0; j < used.size(); ++j) {
      if (used[j] || lhs_profile[i] != rhs_profile[j] || !consistent(i, j)) continue;
      used[j] = true;
      mapping[i] = j;
      if (extend(i + 1)) return true;
      used[j] = false;
    }
    return false;
  }
};

}  // namespace

bool isomorphic_small(const LabeledDigraph& lhs, const LabeledDigraph& rhs,
                      std::size_t limit) {
  if (lhs.vertex_count() > limit || rhs.vertex_count() > limit) {
    throw OracleRefused("isomorphic_small: graphs larger than " +
                        std::to_string(limit) + " vertices");
  }
  if (lhs.alphabet_size() != rhs.alphabet_size() ||
      lhs.vertex_count() != rhs.vertex_count() ||
      lhs.edge_count() != rhs.edge_count()) {
    return false;
  }
  IsoSearch search{lhs, rhs, {}, {}, std::vector<std::size_t>(lhs.vertex_count()),
                   std::vector<bool>(rhs.vertex_count(), false)};
  for (VertexId v : lhs.vertices()) search.lhs_profile.push_back(profile(lhs, v));
  for (VertexId v : rhs.vertices()) search.rhs_profile.push_back(profile(rhs, v));
  auto l = search.lhs_profile;
  auto r = search.rhs_profile;
  std::sort(l.begin(), l.end());
  std::sort(r.begin(), r.end());
  if (l != r) return false;
  return search.extend(0);
}

}  // namespace domlearn
