#pragma once

// A concrete teacher backed by an irreducible domain template. Every revealed
// vertex is a fresh instance of one template domain, and
//
//   (u, a, v) in G  iff  (dom(u), a, dom(v)) in E(template)
//
// for all u, v, including u == v and distinct members of one domain.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "domlearn/digraph.hpp"
#include "domlearn/protocol.hpp"
#include "domlearn/random.hpp"

namespace domlearn {

struct WorldTemplate {
  LabeledDigraph graph;  // vertices 0..m-1, one per domain
  std::uint64_t seed = 0;

  std::size_t domain_count() const { return graph.vertex_count(); }
  std::size_t alphabet_size() const { return graph.alphabet_size(); }
};

class GenerationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxTemplateAttempts = 10000;

/// Samples each of the m*m*k candidate edges with probability edge_density
/// until the template is irreducible. Deterministic in all arguments.
WorldTemplate generate_template(std::uint64_t seed, std::size_t m,
                                std::size_t k, double edge_density);

/// `domains m=<m>` followed by the graph text block.
void write_template(std::ostream& out, const WorldTemplate& world);
WorldTemplate read_template(std::istream& in);

namespace schedule {
struct Scripted {
  std::vector<std::size_t> domains;
};
struct IidWeighted {
  std::vector<double> probabilities;
};
struct IidUniform {};
/// Domain 0 for prefix_len draws, then one instance of each of 1..m-1.
struct NovelLast {
  std::size_t prefix_len = 0;
};
}  // namespace schedule

using RevelationSchedule =
    std::variant<schedule::Scripted, schedule::IidWeighted, schedule::IidUniform,
                 schedule::NovelLast>;

/// Parses `uniform`, `weighted:p1,p2,...`, `scripted:d1,d2,...`,
/// `novel-last` (prefix chosen by the caller) or `novel-last:<prefix>`.
/// A bare `novel-last` yields prefix_len = SIZE_MAX as a placeholder.
RevelationSchedule parse_schedule(const std::string& text);
std::string to_string(const RevelationSchedule& s);

/// Throws std::invalid_argument if the schedule is inconsistent with m.
void validate_schedule(const RevelationSchedule& s, std::size_t m);

bool is_iid(const RevelationSchedule& s);

/// Draws domain indices according to a schedule.
class DomainSampler {
 public:
  DomainSampler(RevelationSchedule schedule, std::size_t m, std::uint64_t seed);

  /// Throws TeacherExhausted when a finite schedule runs out.
  std::size_t next();
  std::size_t domain_count() const { return m_; }
  /// Per-domain probabilities for iid schedules.
  std::vector<double> probabilities() const;

 private:
  RevelationSchedule schedule_;
  std::size_t m_;
  SplitMix64 rng_;
  std::size_t drawn_ = 0;
  std::vector<double> cumulative_;
};

class SyntheticTeacher final : public Teacher {
 public:
  SyntheticTeacher(WorldTemplate world, RevelationSchedule schedule,
                   std::uint64_t seed);

  const Alphabet& alphabet() const override { return world_.graph.alphabet(); }
  VertexId next_vertex() override;
  bool connection(VertexId u, RightId a, VertexId v) override;
  ErrorSet hypothesis_test(const LabeledDigraph& h,
                           const Assignment& pi) override;

  const WorldTemplate& world() const { return world_; }
  /// Ground truth G[U]; for conformance checks only.
  const LabeledDigraph& revealed_graph() const { return revealed_graph_; }
  std::size_t domain_of(VertexId v) const;
  /// Number of distinct domains with at least one revealed instance.
  std::size_t domains_revealed() const { return domains_seen_; }

 private:
  std::size_t require_revealed(VertexId v) const;

  WorldTemplate world_;
  DomainSampler sampler_;
  std::vector<std::size_t> domain_;  // indexed by vertex id
  std::vector<bool> seen_;
  std::size_t domains_seen_ = 0;
  LabeledDigraph revealed_graph_;
};

}  // namespace domlearn
