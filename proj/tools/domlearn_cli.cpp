// Command-line front end for the domain-learning experiments.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "domlearn/experiment.hpp"
#include "domlearn/graph_io.hpp"
#include "domlearn/learners.hpp"
#include "domlearn/synthetic_teacher.hpp"

namespace {

using namespace domlearn;

struct Overrides {
  std::string config_path;
  std::optional<std::string> learner;
  std::optional<std::size_t> k;
  std::optional<std::size_t> m;
  std::optional<double> density;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> schedule;
  std::optional<std::size_t> rounds;
  std::optional<std::size_t> trials;
  std::optional<std::string> oracle;
  std::optional<std::string> out;
  std::optional<std::string> template_path;
  std::optional<std::string> fault;
  std::optional<std::vector<std::size_t>> n_list;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON config file; flags override it");
  cmd->add_option("--learner", o.learner, "tireless | conservative");
  cmd->add_option("--k", o.k, "number of access rights");
  cmd->add_option("--m", o.m, "number of template domains");
  cmd->add_option("--density", o.density, "template edge probability");
  cmd->add_option("--seed", o.seed, "base seed; trial t uses seed + t");
  cmd->add_option("--schedule", o.schedule,
                  "uniform | weighted:p1,..,pm | scripted:d1,..,dn | novel-last[:N]");
  cmd->add_option("--rounds", o.rounds, "rounds per trial");
  cmd->add_option("--trials", o.trials, "number of trials");
  cmd->add_option("--oracle", o.oracle, "off | every | every=<j>");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--template", o.template_path, "load the world template from a file");
  cmd->add_option("--fault", o.fault, "none | skip-revise | reducible-h");
}

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
  if (o.learner) c.learner = parse_learner(*o.learner);
  if (o.k) c.k = *o.k;
  if (o.m) c.m = *o.m;
  if (o.density) c.edge_density = *o.density;
  if (o.seed) c.seed = *o.seed;
  if (o.schedule) c.schedule = parse_schedule(*o.schedule);
  if (o.rounds) c.rounds = *o.rounds;
  if (o.trials) c.trials = *o.trials;
  if (o.oracle) c.oracle_period = parse_oracle_period(*o.oracle);
  if (o.out) c.output = *o.out;
  if (o.template_path) c.template_path = *o.template_path;
  if (o.fault) c.fault = parse_fault(*o.fault);
  if (o.n_list) c.sweep_rounds = *o.n_list;
  return c;
}

// Writes through `body` to the configured file or stdout.
template <typename Body>
void emit(const ExperimentConfig& c, Body body) {
  if (c.output.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream file(c.output);
  if (!file) throw std::runtime_error("cannot write " + c.output);
  body(file);
}

void report_violations(const std::vector<std::string>& violations) {
  for (const auto& v : violations) std::cerr << "violation: " << v << '\n';
}

int cmd_run(const ExperimentConfig& c) {
  int status = 0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const RunReport report = run_trial(c, t, c.oracle_period ? RoundObserver(check_round)
                                                             : RoundObserver{});
    emit(c.trials == 1 ? c : [&] {
      ExperimentConfig per = c;
      if (!per.output.empty()) per.output += "." + std::to_string(t);
      return per;
    }(), [&](std::ostream& out) { write_csv(out, report); });
    report_violations(report.violations);
    if (!report.ok()) status = 1;
  }
  return status;
}

int cmd_verify(const ExperimentConfig& c) {
  const VerifyReport report = verify(c);
  report_violations(report.failures);
  emit(c, [&](std::ostream& out) {
    out << "trials " << report.trials << '\n'
        << "rounds_checked " << report.rounds_checked << '\n'
        << "failures " << report.failures.size() << '\n';
    if (report.first_failure) {
      out << "first_failure trial " << report.first_failure->first << " round "
          << report.first_failure->second << '\n';
    }
    out << (report.ok() ? "PASS" : "FAIL") << '\n';
  });
  return report.ok() ? 0 : 1;
}

int cmd_sweep(const ExperimentConfig& c) {
  const SweepReport report = sweep(c, c.sweep_rounds);
  emit(c, [&](std::ostream& out) { write_sweep_csv(out, report); });
  report_violations(report.violations);
  return report.violations.empty() ? 0 : 1;
}

int cmd_coupon(const ExperimentConfig& c) {
  const CouponSummary s = coupon(c);
  emit(c, [&](std::ostream& out) {
    out << std::setprecision(10);
    out << "m " << s.m << '\n' << "trials " << s.trials << '\n' << "probabilities";
    for (double p : s.probabilities) out << ' ' << p;
    out << '\n' << "mean " << s.mean << '\n' << "stddev " << s.stddev << '\n';
    out << "exact " << s.exact << '\n';
    if (s.harmonic) out << "harmonic " << *s.harmonic << '\n';
    out << "relative_error " << (s.mean - s.exact) / s.exact << '\n';
  });
  return 0;
}

int cmd_dump(const ExperimentConfig& c, const std::string& what, const std::string& format) {
  const bool dot = format == "dot";
  if (!dot && format != "text") throw std::invalid_argument("format must be text or dot");
  if (what == "template") {
    const WorldTemplate world = make_world(c, 0);
    emit(c, [&](std::ostream& out) {
      if (dot) {
        write_graph_dot(out, world.graph, "template");
      } else {
        write_template(out, world);
      }
    });
    return 0;
  }
  if (what != "policy" && what != "tree") {
    throw std::invalid_argument("dump target must be template, policy or tree");
  }
  validate(c);
  WorldTemplate world = make_world(c, 0);
  const std::size_t m = world.domain_count();
  SyntheticTeacher teacher(std::move(world), resolve_schedule(c, m), mix64(c.seed ^ 0x7e4c4e5ULL));
  Session session(teacher);
  std::unique_ptr<Learner> learner;
  if (c.learner == LearnerKind::Tireless) {
    learner = std::make_unique<TirelessLearner>();
  } else {
    learner = std::make_unique<ConservativeLearner>(c.fault);
  }
  try {
    for (std::size_t n = 0; n < c.rounds; ++n) learner->run_round(session);
  } catch (const TeacherExhausted&) {
  }
  if (what == "tree") {
    const auto* cons = dynamic_cast<const ConservativeLearner*>(learner.get());
    if (!cons || !cons->state()) {
      throw std::invalid_argument("tree dump needs the conservative learner");
    }
    emit(c, [&](std::ostream& out) {
      if (dot) {
        write_tree_dot(out, cons->state()->tree, teacher.alphabet());
      } else {
        write_tree_text(out, cons->state()->tree, teacher.alphabet());
      }
    });
    return 0;
  }
  const DomainPolicy policy = learner->policy();
  emit(c, [&](std::ostream& out) {
    if (dot) {
      write_graph_dot(out, policy.summary, "policy");
    } else {
      write_policy_text(out, policy);
    }
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Domain-based access-control policy learning experiments"};
  app.require_subcommand(1);

  Overrides run_o, verify_o, sweep_o, coupon_o, dump_o;
  auto* run_cmd = app.add_subcommand("run", "run one learner and write the per-round CSV");
  add_common(run_cmd, run_o);
  auto* verify_cmd = app.add_subcommand("verify", "run with oracle checks every round");
  add_common(verify_cmd, verify_o);
  auto* sweep_cmd = app.add_subcommand("sweep", "both learners over a list of round counts");
  add_common(sweep_cmd, sweep_o);
  sweep_cmd->add_option("--n-list", sweep_o.n_list, "round counts to report")->delimiter(',');
  auto* coupon_cmd = app.add_subcommand("coupon", "simulate the time to reveal every domain");
  add_common(coupon_cmd, coupon_o);
  auto* dump_cmd = app.add_subcommand("dump", "print a template, learned policy or tree");
  add_common(dump_cmd, dump_o);
  std::string what = "template";
  std::string format = "text";
  dump_cmd->add_option("--what", what, "template | policy | tree");
  dump_cmd->add_option("--format", format, "text | dot");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(resolve(run_o));
    if (*verify_cmd) return cmd_verify(resolve(verify_o));
    if (*sweep_cmd) return cmd_sweep(resolve(sweep_o));
    if (*coupon_cmd) return cmd_coupon(resolve(coupon_o));
    if (*dump_cmd) return cmd_dump(resolve(dump_o), what, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
