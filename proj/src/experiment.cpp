#include "domlearn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "domlearn/oracle.hpp"
#include "domlearn/summarize.hpp"

namespace domlearn {

std::string_view to_string(LearnerKind kind) {
  return kind == LearnerKind::Tireless ? "tireless" : "conservative";
}

LearnerKind parse_learner(std::string_view text) {
  if (text == "tireless") return LearnerKind::Tireless;
  if (text == "conservative") return LearnerKind::Conservative;
  throw std::invalid_argument("unknown learner '" + std::string(text) + "'");
}

LearnerFault parse_fault(std::string_view text) {
  if (text == "none") return LearnerFault::None;
  if (text == "skip-revise") return LearnerFault::SkipRevise;
  if (text == "reducible-h") return LearnerFault::ReducibleHypothesis;
  throw std::invalid_argument("unknown fault '" + std::string(text) + "'");
}

std::string_view to_string(LearnerFault fault) {
  switch (fault) {
    case LearnerFault::None:
      return "none";
    case LearnerFault::SkipRevise:
      return "skip-revise";
    case LearnerFault::ReducibleHypothesis:
      return "reducible-h";
  }
  return "none";
}

std::size_t parse_oracle_period(std::string_view text) {
  if (text == "off") return 0;
  if (text == "every") return 1;
  if (text.rfind("every=", 0) == 0) {
    const std::string digits(text.substr(6));
    std::size_t pos = 0;
    unsigned long j = 0;
    try {
      j = std::stoul(digits, &pos);
    } catch (const std::logic_error&) {
      pos = 0;
    }
    if (pos == digits.size() && !digits.empty() && j >= 1) return j;
  }
  throw std::invalid_argument("oracle must be off, every or every=<j>");
}

void apply_json_config(ExperimentConfig& config, std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config: expected a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "learner") {
        config.learner = parse_learner(value.get<std::string>());
      } else if (key == "k") {
        config.k = value.get<std::size_t>();
      } else if (key == "m") {
        config.m = value.get<std::size_t>();
      } else if (key == "density") {
        config.edge_density = value.get<double>();
      } else if (key == "seed") {
        config.seed = value.get<std::uint64_t>();
      } else if (key == "schedule") {
        config.schedule = parse_schedule(value.get<std::string>());
      } else if (key == "rounds") {
        config.rounds = value.get<std::size_t>();
      } else if (key == "trials") {
        config.trials = value.get<std::size_t>();
      } else if (key == "oracle") {
        config.oracle_period = parse_oracle_period(value.get<std::string>());
      } else if (key == "out") {
        config.output = value.get<std::string>();
      } else if (key == "template") {
        config.template_path = value.get<std::string>();
      } else if (key == "sweep_n") {
        config.sweep_rounds = value.get<std::vector<std::size_t>>();
      } else if (key == "fault") {
        config.fault = parse_fault(value.get<std::string>());
      } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig config;
  apply_json_config(config, buffer.str());
  return config;
}

void validate(const ExperimentConfig& config) {
  if (config.rounds < 1) throw std::invalid_argument("rounds must be at least 1");
  if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (config.template_path.empty()) {
    if (config.k < 1 || config.m < 1) {
      throw std::invalid_argument("k and m must be at least 1");
    }
    if (!(config.edge_density >= 0.0 && config.edge_density <= 1.0)) {
      throw std::invalid_argument("density must lie in [0, 1]");
    }
    validate_schedule(config.schedule, config.m);
  }
  if (config.oracle_period == 1 && config.rounds > kMaxCheckedRounds) {
    throw std::invalid_argument("oracle checks every round require rounds <= " +
                                std::to_string(kMaxCheckedRounds));
  }
}

std::uint64_t trial_seed(const ExperimentConfig& config, std::size_t trial) {
  return config.seed + trial;
}

WorldTemplate make_world(const ExperimentConfig& config, std::size_t trial) {
  if (!config.template_path.empty()) {
    std::ifstream in(config.template_path);
    if (!in) throw std::invalid_argument("cannot open template " + config.template_path);
    WorldTemplate world = read_template(in);
    world.seed = trial_seed(config, trial);
    return world;
  }
  return generate_template(trial_seed(config, trial), config.m, config.k,
                           config.edge_density);
}

RevelationSchedule resolve_schedule(const ExperimentConfig& config, std::size_t m) {
  if (const auto* nl = std::get_if<schedule::NovelLast>(&config.schedule)) {
    if (nl->prefix_len == std::numeric_limits<std::size_t>::max()) {
      const std::size_t novel = m - 1;
      return schedule::NovelLast{config.rounds > novel ? config.rounds - novel : 0};
    }
  }
  return config.schedule;
}

std::uint64_t bound_tireless(std::uint64_t k, std::uint64_t n) { return k * n * n; }

std::uint64_t bound_conservative_cnq(std::uint64_t k, std::uint64_t n,
                                     std::uint64_t m) {
  return k + (n - 1) * (m - 1);
}

std::uint64_t bound_conservative_errors(std::uint64_t k, std::uint64_t n,
                                        std::uint64_t m) {
  return k * (2 * n + 1) * (m - 1);
}

// ---------------------------------------------------------------------------

namespace {

std::unique_ptr<Learner> make_learner(const ExperimentConfig& config) {
  if (config.learner == LearnerKind::Tireless) {
    return std::make_unique<TirelessLearner>();
  }
  return std::make_unique<ConservativeLearner>(config.fault);
}

std::string at_round(std::size_t trial, std::size_t n, const std::string& what) {
  return "trial " + std::to_string(trial) + " round " + std::to_string(n) + ": " +
         what;
}

}  // namespace

RunReport run_trial(const ExperimentConfig& config, std::size_t trial,
                    const RoundObserver& observer) {
  validate(config);
  WorldTemplate world = make_world(config, trial);
  const std::size_t m = world.domain_count();
  const std::size_t k = world.alphabet_size();
  SyntheticTeacher teacher(std::move(world), resolve_schedule(config, m),
                           mix64(trial_seed(config, trial) ^ 0x7e4c4e5ULL));
  Session session(teacher);
  std::unique_ptr<Learner> learner = make_learner(config);

  RunReport report;
  report.k = k;
  report.m = m;
  for (std::size_t n = 1; n <= config.rounds; ++n) {
    try {
      learner->run_round(session);
    } catch (const TeacherExhausted&) {
      report.teacher_exhausted = true;
      break;
    } catch (const CriterionViolation& e) {
      report.violations.push_back(at_round(trial, n, e.what()));
      break;
    } catch (const ProtocolViolation& e) {
      report.violations.push_back(at_round(trial, n, std::string("protocol: ") + e.what()));
      break;
    } catch (const InternalFailure& e) {
      report.violations.push_back(at_round(trial, n, std::string("internal: ") + e.what()));
      break;
    }
    if (report.coverage_round == 0 && teacher.domains_revealed() == m) {
      report.coverage_round = n;
    }

    const bool check_due = config.oracle_period > 0 && n % config.oracle_period == 0;
    if (observer && check_due) {
      for (auto& failure : observer({n, teacher, session, *learner})) {
        report.violations.push_back(at_round(trial, n, failure));
      }
    }
    if (session.phase() == Phase::AwaitingClean) {
      report.violations.push_back(at_round(
          trial, n, "SC-2: round ended without an error-free hypothesis test"));
      break;
    }

    const RoundSnapshot& snap = session.ledger().per_round.back();
    RunRow row;
    row.n = snap.n;
    row.cnq_cum = snap.cnq_cumulative;
    row.htq_cum = snap.htq_cumulative;
    row.errors_cum = snap.errors_cumulative;
    row.observed_m = config.oracle_period > 0
                         ? oracle_partition(teacher.revealed_graph()).size()
                         : learner->policy().summary.vertex_count();
    row.bound_tireless = bound_tireless(k, n);
    row.bound_cons_cnq = bound_conservative_cnq(k, n, row.observed_m);
    row.bound_cons_err = bound_conservative_errors(k, n, row.observed_m);
    report.rows.push_back(row);

    if (config.learner == LearnerKind::Tireless) {
      if (row.cnq_cum != row.bound_tireless) {
        report.violations.push_back(at_round(trial, n, "cnq_cum differs from k*n^2"));
      }
    } else {
      if (row.cnq_cum > row.bound_cons_cnq) {
        report.violations.push_back(at_round(trial, n, "cnq_cum exceeds k+(n-1)(m-1)"));
      }
      if (row.errors_cum > row.bound_cons_err) {
        report.violations.push_back(at_round(trial, n, "errors_cum exceeds k(2n+1)(m-1)"));
      }
    }
  }
  report.htq_log = session.ledger().htq_log;
  if (config.learner == LearnerKind::Conservative) {
    for (const HtqRecord& h : report.htq_log) {
      if (h.error_count > k * (2 * h.round - 1)) {
        report.violations.push_back(
            at_round(trial, h.round, "error set larger than k(2i-1)"));
      }
    }
  }
  return report;
}

RunReport run(const ExperimentConfig& config) { return run_trial(config, 0); }

void write_csv(std::ostream& out, const RunReport& report) {
  out << kCsvHeader << '\n';
  for (const RunRow& r : report.rows) {
    out << r.n << ',' << r.cnq_cum << ',' << r.htq_cum << ',' << r.errors_cum << ','
        << r.observed_m << ',' << r.bound_tireless << ',' << r.bound_cons_cnq << ','
        << r.bound_cons_err << '\n';
  }
}

std::string csv_string(const RunReport& report) {
  std::ostringstream out;
  write_csv(out, report);
  return out.str();
}

// ---------------------------------------------------------------------------

double coupon_expectation(std::span<const double> probabilities) {
  const std::size_t m = probabilities.size();
  if (m == 0 || m > 24) {
    throw std::invalid_argument("coupon_expectation: need 1 <= m <= 24");
  }
  double total = 0.0;
  for (std::uint32_t subset = 1; subset < (1u << m); ++subset) {
    double mass = 0.0;
    int size = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (subset & (1u << i)) {
        mass += probabilities[i];
        ++size;
      }
    }
    total += (size % 2 == 1 ? 1.0 : -1.0) / mass;
  }
  return total;
}

double harmonic_expectation(std::size_t m) {
  double h = 0.0;
  for (std::size_t i = 1; i <= m; ++i) h += 1.0 / static_cast<double>(i);
  return static_cast<double>(m) * h;
}

CouponSummary coupon(const ExperimentConfig& config) {
  if (!is_iid(config.schedule)) {
    throw std::invalid_argument("coupon: schedule must be uniform or weighted");
  }
  if (config.trials < 1) throw std::invalid_argument("coupon: trials must be >= 1");
  validate_schedule(config.schedule, config.m);

  CouponSummary summary;
  summary.m = config.m;
  summary.trials = config.trials;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    DomainSampler sampler(config.schedule, config.m, mix64(trial_seed(config, t)));
    if (t == 0) summary.probabilities = sampler.probabilities();
    std::vector<bool> seen(config.m, false);
    std::size_t distinct = 0;
    std::size_t draws = 0;
    while (distinct < config.m) {
      const std::size_t d = sampler.next();
      ++draws;
      if (!seen[d]) {
        seen[d] = true;
        ++distinct;
      }
    }
    sum += static_cast<double>(draws);
    sum_sq += static_cast<double>(draws) * static_cast<double>(draws);
  }
  const auto n = static_cast<double>(config.trials);
  summary.mean = sum / n;
  summary.stddev =
      config.trials > 1 ? std::sqrt(std::max(0.0, (sum_sq - n * summary.mean * summary.mean) / (n - 1)))
                        : 0.0;
  summary.exact = coupon_expectation(summary.probabilities);
  if (std::holds_alternative<schedule::IidUniform>(config.schedule)) {
    summary.harmonic = harmonic_expectation(config.m);
  }
  return summary;
}

// ---------------------------------------------------------------------------

std::vector<std::string> check_round(const RoundContext& ctx) {
  std::vector<std::string> failures;
  const LabeledDigraph& g_u = ctx.teacher.revealed_graph();

  if (const auto* cons = dynamic_cast<const ConservativeLearner*>(&ctx.learner)) {
    if (!cons->state()) return {"conservative learner has no state"};
    const InvariantReport report = check_round_invariants(g_u, *cons->state());
    for (const InvariantCheck& c : report.checks) {
      if (!c.passed) failures.push_back(c.name + ": " + c.detail);
    }
  } else if (const auto* tireless = dynamic_cast<const TirelessLearner*>(&ctx.learner)) {
    if (!(tireless->reconstruction() == g_u)) {
      failures.push_back("tireless reconstruction differs from G[U]");
    }
    if (ctx.session.ledger().errors_cumulative != 0) {
      failures.push_back("tireless hypothesis test returned errors");
    }
    const DomainPolicy policy = tireless->policy();
    std::map<VertexId, std::vector<VertexId>> by_image;
    for (const auto& [v, x] : policy.assignment) by_image[x].push_back(v);
    std::vector<std::vector<VertexId>> induced;
    for (auto& [x, members] : by_image) induced.push_back(members);
    std::sort(induced.begin(), induced.end());
    if (induced != oracle_partition(g_u)) {
      failures.push_back("tireless assignment partition differs from oracle");
    }
  }

  const LabeledDigraph h = ctx.learner.policy().summary;
  if (h.vertex_count() <= kIsomorphismLimit) {
    const DomainPolicy reference = summarize(g_u);
    if (reference.summary.vertex_count() > kIsomorphismLimit ||
        !isomorphic_small(h, reference.summary)) {
      failures.push_back("summary not isomorphic to summarize(G[U])");
    }
  }
  return failures;
}

VerifyReport verify(const ExperimentConfig& config) {
  ExperimentConfig checked = config;
  if (checked.oracle_period == 0) checked.oracle_period = 1;
  VerifyReport report;
  report.trials = checked.trials;
  for (std::size_t t = 0; t < checked.trials; ++t) {
    const RunReport run_report = run_trial(checked, t, [&](const RoundContext& ctx) {
      ++report.rounds_checked;
      return check_round(ctx);
    });
    if (!run_report.violations.empty() && !report.first_failure) {
      std::size_t round = run_report.rows.size() + 1;
      for (const auto& v : run_report.violations) {
        // "trial T round N: ..."
        const auto pos = v.find("round ");
        if (pos != std::string::npos) {
          round = std::stoul(v.substr(pos + 6));
          break;
        }
      }
      report.first_failure = std::make_pair(t, round);
    }
    for (const auto& v : run_report.violations) report.failures.push_back(v);
  }
  return report;
}

// ---------------------------------------------------------------------------

SweepReport sweep(const ExperimentConfig& config,
                  const std::vector<std::size_t>& rounds) {
  if (rounds.empty()) throw std::invalid_argument("sweep: empty round list");
  std::vector<std::size_t> wanted = rounds;
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  if (wanted.front() < 1) throw std::invalid_argument("sweep: rounds must be >= 1");

  SweepReport report;
  for (std::size_t t = 0; t < config.trials; ++t) {
    for (LearnerKind kind : {LearnerKind::Tireless, LearnerKind::Conservative}) {
      ExperimentConfig cell = config;
      cell.learner = kind;
      cell.rounds = wanted.back();
      const RunReport run_report = run_trial(cell, t);
      for (const RunRow& row : run_report.rows) {
        if (std::binary_search(wanted.begin(), wanted.end(), row.n)) {
          report.rows.push_back({kind, t, row});
        }
      }
      for (const auto& v : run_report.violations) {
        report.violations.push_back(std::string(to_string(kind)) + " " + v);
      }
    }
  }
  return report;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << "learner,trial," << kCsvHeader << '\n';
  for (const SweepRow& s : report.rows) {
    const RunRow& r = s.row;
    out << to_string(s.learner) << ',' << s.trial << ',' << r.n << ',' << r.cnq_cum
        << ',' << r.htq_cum << ',' << r.errors_cum << ',' << r.observed_m << ','
        << r.bound_tireless << ',' << r.bound_cons_cnq << ',' << r.bound_cons_err
        << '\n';
  }
}

}  // namespace domlearn
