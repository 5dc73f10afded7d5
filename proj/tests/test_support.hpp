#pragma once

// Shared fixtures and brute-force references for the test binaries.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <vector>

#include "domlearn/digraph.hpp"
#include "domlearn/random.hpp"
#include "domlearn/synthetic_teacher.hpp"

namespace domlearn::testing {

inline LabeledDigraph make_graph(std::size_t k, std::vector<VertexId> vertices,
                                 std::initializer_list<Edge> edges) {
  LabeledDigraph g(Alphabet::with_size(k), vertices);
  for (const Edge& e : edges) g.add_edge(e);
  return g;
}

// Vertices 0..n-1; each of the k*n*n triples present with probability p.
inline LabeledDigraph random_graph(SplitMix64& rng, std::size_t n, std::size_t k,
                                   double p) {
  std::vector<VertexId> vs(n);
  std::iota(vs.begin(), vs.end(), 0);
  LabeledDigraph g(Alphabet::with_size(k), vs);
  for (VertexId u = 0; u < n; ++u) {
    for (RightId a = 0; a < k; ++a) {
      for (VertexId v = 0; v < n; ++v) {
        if (rng.uniform01() < p) g.add_edge(u, a, v);
      }
    }
  }
  return g;
}

// Random graph built by blowing up a small random template: vertex i copies
// domain i % m, so large equivalence classes are common.
inline LabeledDigraph random_blowup(SplitMix64& rng, std::size_t n, std::size_t m,
                                    std::size_t k, double p) {
  const LabeledDigraph t = random_graph(rng, m, k, p);
  std::vector<std::size_t> dom(n);
  for (std::size_t i = 0; i < n; ++i) dom[i] = rng.below(m);
  std::vector<VertexId> vs(n);
  std::iota(vs.begin(), vs.end(), 0);
  LabeledDigraph g(Alphabet::with_size(k), vs);
  for (VertexId u = 0; u < n; ++u) {
    for (RightId a = 0; a < k; ++a) {
      for (VertexId v = 0; v < n; ++v) {
        if (t.has_edge(static_cast<VertexId>(dom[u]), a, static_cast<VertexId>(dom[v]))) {
          g.add_edge(u, a, v);
        }
      }
    }
  }
  return g;
}

// Copy of g with vertex v renamed to perm[v].
inline LabeledDigraph relabel(const LabeledDigraph& g,
                              const std::map<VertexId, VertexId>& perm) {
  std::vector<VertexId> vs;
  for (VertexId v : g.vertices()) vs.push_back(perm.at(v));
  LabeledDigraph out(g.alphabet(), vs);
  for (const Edge& e : g.edges()) {
    out.add_edge(perm.at(e.source), e.right, perm.at(e.target));
  }
  return out;
}

inline std::map<VertexId, VertexId> random_permutation(SplitMix64& rng,
                                                       const std::vector<VertexId>& vs,
                                                       VertexId offset = 100) {
  std::vector<VertexId> image(vs.size());
  std::iota(image.begin(), image.end(), offset);
  for (std::size_t i = image.size(); i > 1; --i) {
    std::swap(image[i - 1], image[rng.below(i)]);
  }
  std::map<VertexId, VertexId> perm;
  for (std::size_t i = 0; i < vs.size(); ++i) perm[vs[i]] = image[i];
  return perm;
}

// The two defining conditions, checked triple by triple.
inline bool brute_indistinguishable(const LabeledDigraph& g, VertexId u, VertexId v) {
  if (u == v) return true;
  for (RightId a = 0; a < g.alphabet_size(); ++a) {
    const bool uu = g.has_edge(u, a, u);
    const bool uv = g.has_edge(u, a, v);
    const bool vu = g.has_edge(v, a, u);
    const bool vv = g.has_edge(v, a, v);
    if (!(uu == uv && uv == vu && vu == vv)) return false;
    for (VertexId x : g.vertices()) {
      if (x == u || x == v) continue;
      if (g.has_edge(u, a, x) != g.has_edge(v, a, x)) return false;
      if (g.has_edge(x, a, u) != g.has_edge(x, a, v)) return false;
    }
  }
  return true;
}

// Classes ordered by minimum id. Each vertex joins the first class whose
// every member it is indistinguishable from.
inline std::vector<std::vector<VertexId>> brute_partition(const LabeledDigraph& g) {
  std::vector<std::vector<VertexId>> classes;
  for (VertexId v : g.vertices()) {
    bool placed = false;
    for (auto& cls : classes) {
      if (std::all_of(cls.begin(), cls.end(),
                      [&](VertexId w) { return brute_indistinguishable(g, v, w); })) {
        cls.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({v});
  }
  return classes;
}

inline WorldTemplate make_world(std::size_t m, std::size_t k,
                                std::initializer_list<Edge> edges) {
  std::vector<VertexId> vs(m);
  std::iota(vs.begin(), vs.end(), 0);
  return WorldTemplate{make_graph(k, vs, edges), 0};
}

}  // namespace domlearn::testing
