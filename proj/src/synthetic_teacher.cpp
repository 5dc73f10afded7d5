#include "domlearn/synthetic_teacher.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "domlearn/graph_io.hpp"

namespace domlearn {

WorldTemplate generate_template(std::uint64_t seed, std::size_t m,
                                std::size_t k, double edge_density) {
  if (m < 1 || k < 1) {
    throw std::invalid_argument("generate_template: need m >= 1 and k >= 1");
  }
  if (!(edge_density >= 0.0 && edge_density <= 1.0)) {
    throw std::invalid_argument("generate_template: density outside [0, 1]");
  }
  const Alphabet alphabet = Alphabet::with_size(k);
  std::vector<VertexId> domains(m);
  std::iota(domains.begin(), domains.end(), VertexId{0});

  for (int attempt = 0; attempt < kMaxTemplateAttempts; ++attempt) {
    SplitMix64 rng(mix64(seed ^ mix64(static_cast<std::uint64_t>(attempt))));
    LabeledDigraph g(alphabet, domains);
    for (VertexId x : domains) {
      for (RightId a = 0; a < k; ++a) {
        for (VertexId y : domains) {
          if (rng.uniform01() < edge_density) g.add_edge(x, a, y);
        }
      }
    }
    if (is_irreducible(g)) return {std::move(g), seed};
  }
  throw GenerationFailure(
      "no irreducible template with m=" + std::to_string(m) +
      " k=" + std::to_string(k) + " density=" + std::to_string(edge_density) +
      " after " + std::to_string(kMaxTemplateAttempts) + " attempts");
}

void write_template(std::ostream& out, const WorldTemplate& world) {
  out << "domains m=" << world.domain_count() << '\n';
  write_graph_text(out, world.graph);
}

WorldTemplate read_template(std::istream& in) {
  std::string line;
  std::size_t m = 0;
  bool found = false;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::string first, field;
    if (!(tokens >> first) || first[0] == '#') continue;
    if (first != "domains" || !(tokens >> field) || field.rfind("m=", 0) != 0) {
      throw std::invalid_argument("template: expected 'domains m=<m>' line");
    }
    m = std::stoul(field.substr(2));
    found = true;
    break;
  }
  if (!found) throw std::invalid_argument("template: missing domains line");
  WorldTemplate world{read_graph_text(in), 0};
  const auto& vs = world.graph.vertices();
  if (vs.size() != m || (m > 0 && vs.back() != m - 1)) {
    throw std::invalid_argument("template: vertices must be 0..m-1");
  }
  if (m < 1 || !is_irreducible(world.graph)) {
    throw std::invalid_argument("template: must be non-empty and irreducible");
  }
  return world;
}

// ---------------------------------------------------------------------------

namespace {

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("schedule: empty list item");
    std::size_t pos = 0;
    if constexpr (std::is_same_v<T, double>) {
      values.push_back(std::stod(item, &pos));
    } else {
      values.push_back(static_cast<T>(std::stoul(item, &pos)));
    }
    if (pos != item.size()) {
      throw std::invalid_argument("schedule: bad list item '" + item + "'");
    }
  }
  return values;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

RevelationSchedule parse_schedule(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (kind == "uniform" && arg.empty()) return schedule::IidUniform{};
    if (kind == "weighted" && !arg.empty()) {
      return schedule::IidWeighted{parse_list<double>(arg)};
    }
    if (kind == "scripted" && !arg.empty()) {
      return schedule::Scripted{parse_list<std::size_t>(arg)};
    }
    if (kind == "novel-last") {
      if (arg.empty()) {
        return schedule::NovelLast{std::numeric_limits<std::size_t>::max()};
      }
      return schedule::NovelLast{parse_list<std::size_t>(arg).at(0)};
    }
  } catch (const std::logic_error&) {
    // fall through to the diagnostic below
  }
  throw std::invalid_argument("unrecognized schedule '" + text + "'");
}

std::string to_string(const RevelationSchedule& s) {
  return std::visit(
      overloaded{
          [](const schedule::IidUniform&) { return std::string("uniform"); },
          [](const schedule::IidWeighted& w) {
            std::ostringstream out;
            out.precision(17);
            out << "weighted:";
            for (std::size_t i = 0; i < w.probabilities.size(); ++i) {
              out << (i ? "," : "") << w.probabilities[i];
            }
            return out.str();
          },
          [](const schedule::Scripted& sc) {
            std::string out = "scripted:";
            for (std::size_t i = 0; i < sc.domains.size(); ++i) {
              out += (i ? "," : "") + std::to_string(sc.domains[i]);
            }
            return out;
          },
          [](const schedule::NovelLast& nl) {
            if (nl.prefix_len == std::numeric_limits<std::size_t>::max()) {
              return std::string("novel-last");
            }
            return "novel-last:" + std::to_string(nl.prefix_len);
          }},
      s);
}

void validate_schedule(const RevelationSchedule& s, std::size_t m) {
  if (m < 1) throw std::invalid_argument("schedule: m must be at least 1");
  if (const auto* w = std::get_if<schedule::IidWeighted>(&s)) {
    if (w->probabilities.size() != m) {
      throw std::invalid_argument("schedule: need exactly m probabilities");
    }
    double total = 0.0;
    for (double p : w->probabilities) {
      if (!(p > 0.0)) throw std::invalid_argument("schedule: probabilities must be positive");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw std::invalid_argument("schedule: probabilities must sum to 1");
    }
  } else if (const auto* sc = std::get_if<schedule::Scripted>(&s)) {
    for (std::size_t d : sc->domains) {
      if (d >= m) throw std::invalid_argument("schedule: scripted domain >= m");
    }
  }
}

bool is_iid(const RevelationSchedule& s) {
  return std::holds_alternative<schedule::IidUniform>(s) ||
         std::holds_alternative<schedule::IidWeighted>(s);
}

DomainSampler::DomainSampler(RevelationSchedule schedule, std::size_t m,
                             std::uint64_t seed)
    : schedule_(std::move(schedule)), m_(m), rng_(seed) {
  validate_schedule(schedule_, m_);
  if (const auto* w = std::get_if<schedule::IidWeighted>(&schedule_)) {
    std::partial_sum(w->probabilities.begin(), w->probabilities.end(),
                     std::back_inserter(cumulative_));
  }
}

std::size_t DomainSampler::next() {
  const std::size_t index = drawn_;
  const std::size_t domain = std::visit(
      overloaded{
          [&](const schedule::IidUniform&) { return rng_.below(m_); },
          [&](const schedule::IidWeighted&) {
            const double r = rng_.uniform01() * cumulative_.back();
            auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
            return std::min<std::size_t>(it - cumulative_.begin(), m_ - 1);
          },
          [&](const schedule::Scripted& sc) {
            if (index >= sc.domains.size()) {
              throw TeacherExhausted("scripted schedule exhausted after " +
                                     std::to_string(index) + " vertices");
            }
            return sc.domains[index];
          },
          [&](const schedule::NovelLast& nl) -> std::size_t {
            if (index < nl.prefix_len) return 0;
            const std::size_t offset = index - nl.prefix_len + 1;
            if (offset >= m_) {
              throw TeacherExhausted("novel-last schedule exhausted after " +
                                     std::to_string(index) + " vertices");
            }
            return offset;
          }},
      schedule_);
  ++drawn_;
  return domain;
}

std::vector<double> DomainSampler::probabilities() const {
  if (const auto* w = std::get_if<schedule::IidWeighted>(&schedule_)) {
    return w->probabilities;
  }
  if (std::holds_alternative<schedule::IidUniform>(schedule_)) {
    return std::vector<double>(m_, 1.0 / static_cast<double>(m_));
  }
  throw std::invalid_argument("probabilities: schedule is not iid");
}

// ---------------------------------------------------------------------------

SyntheticTeacher::SyntheticTeacher(WorldTemplate world,
                                   RevelationSchedule schedule,
                                   std::uint64_t seed)
    : world_(std::move(world)),
      sampler_(std::move(schedule), world_.domain_count(), seed),
      seen_(world_.domain_count(), false),
      revealed_graph_(world_.graph.alphabet()) {}

VertexId SyntheticTeacher::next_vertex() {
  const std::size_t domain = sampler_.next();
  const auto u = static_cast<VertexId>(domain_.size());
  domain_.push_back(domain);
  if (!seen_[domain]) {
    seen_[domain] = true;
    ++domains_seen_;
  }

  revealed_graph_.add_vertex(u);
  const auto du = static_cast<VertexId>(domain);
  const auto& tmpl = world_.graph;
  for (VertexId v : revealed_graph_.vertices()) {
    const auto dv = static_cast<VertexId>(domain_[v]);
    for (RightId a = 0; a < tmpl.alphabet_size(); ++a) {
      if (tmpl.has_edge(du, a, dv)) revealed_graph_.add_edge(u, a, v);
      if (v != u && tmpl.has_edge(dv, a, du)) revealed_graph_.add_edge(v, a, u);
    }
  }
  return u;
}

std::size_t SyntheticTeacher::require_revealed(VertexId v) const {
  if (v >= domain_.size()) {
    throw ProtocolViolation("vertex " + std::to_string(v) +
                            " has not been revealed by the teacher");
  }
  return domain_[v];
}

std::size_t SyntheticTeacher::domain_of(VertexId v) const {
  return require_revealed(v);
}

bool SyntheticTeacher::connection(VertexId u, RightId a, VertexId v) {
  const auto du = static_cast<VertexId>(require_revealed(u));
  const auto dv = static_cast<VertexId>(require_revealed(v));
  return world_.graph.has_edge(du, a, dv);
}

ErrorSet SyntheticTeacher::hypothesis_test(const LabeledDigraph& h,
                                           const Assignment& pi) {
  if (pi.size() != domain_.size() ||
      !std::all_of(pi.begin(), pi.end(),
                   [&](const auto& kv) { return kv.first < domain_.size(); })) {
    throw ProtocolViolation("hypothesis assignment domain differs from the "
                            "revealed set");
  }
  return error_set(revealed_graph_, h, pi);
}

}  // namespace domlearn
