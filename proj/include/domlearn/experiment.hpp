#pragma once

// Desk-scale experiments: run a learner against a synthetic world, compare
// the ledger with the closed-form cost and error bounds, verify invariants
// with the conformance oracle, sweep round counts, and simulate the
// coupon-collector coverage time.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "domlearn/learners.hpp"
#include "domlearn/protocol.hpp"
#include "domlearn/synthetic_teacher.hpp"

namespace domlearn {

enum class LearnerKind { Tireless, Conservative };

std::string_view to_string(LearnerKind kind);
LearnerKind parse_learner(std::string_view text);
LearnerFault parse_fault(std::string_view text);
std::string_view to_string(LearnerFault fault);

inline constexpr std::size_t kMaxCheckedRounds = 256;

struct ExperimentConfig {
  LearnerKind learner = LearnerKind::Conservative;
  std::size_t k = 2;
  std::size_t m = 3;
  double edge_density = 0.5;
  std::uint64_t seed = 1;
  RevelationSchedule schedule = schedule::IidUniform{};
  std::size_t rounds = 32;
  /// 0 = off, 1 = every round, j = every j-th round.
  std::size_t oracle_period = 0;
  std::size_t trials = 1;
  std::string output;
  /// Load the world template from this file instead of generating one.
  std::string template_path;
  std::vector<std::size_t> sweep_rounds{10, 20, 40, 80};
  LearnerFault fault = LearnerFault::None;
};

/// Overlays the fields present in a JSON document onto `config`. Keys:
/// learner, k, m, density, seed, schedule, rounds, trials, oracle, out,
/// template, sweep_n, fault. Throws std::invalid_argument on bad input.
void apply_json_config(ExperimentConfig& config, std::string_view json_text);
ExperimentConfig load_config(const std::string& path);

/// "off", "every" or "every=<j>".
std::size_t parse_oracle_period(std::string_view text);

void validate(const ExperimentConfig& config);

/// Seed of trial t: seed + t.
std::uint64_t trial_seed(const ExperimentConfig& config, std::size_t trial);

/// Template for a trial: loaded from template_path or generated.
WorldTemplate make_world(const ExperimentConfig& config, std::size_t trial);

/// Schedule with a bare novel-last resolved so its last m-1 reveals land on
/// the final rounds.
RevelationSchedule resolve_schedule(const ExperimentConfig& config,
                                    std::size_t m);

std::uint64_t bound_tireless(std::uint64_t k, std::uint64_t n);
std::uint64_t bound_conservative_cnq(std::uint64_t k, std::uint64_t n,
                                     std::uint64_t m);
std::uint64_t bound_conservative_errors(std::uint64_t k, std::uint64_t n,
                                        std::uint64_t m);

struct RunRow {
  std::size_t n = 0;
  std::size_t cnq_cum = 0;
  std::size_t htq_cum = 0;
  std::size_t errors_cum = 0;
  std::size_t observed_m = 0;
  std::uint64_t bound_tireless = 0;
  std::uint64_t bound_cons_cnq = 0;
  std::uint64_t bound_cons_err = 0;
};

inline constexpr std::string_view kCsvHeader =
    "n,cnq_cum,htq_cum,errors_cum,observed_m,bound_tireless,bound_cons_cnq,"
    "bound_cons_err";

struct RunReport {
  std::vector<RunRow> rows;
  std::vector<std::string> violations;
  std::vector<HtqRecord> htq_log;
  bool teacher_exhausted = false;
  /// First round by which every template domain had been revealed; 0 if
  /// that never happened.
  std::size_t coverage_round = 0;
  std::size_t k = 0;
  std::size_t m = 0;

  bool ok() const { return violations.empty(); }
};

/// Everything an observer may inspect after a completed round.
struct RoundContext {
  std::size_t round;
  const SyntheticTeacher& teacher;
  const Session& session;
  const Learner& learner;
};

/// Returns failure descriptions (empty when the round checks out).
using RoundObserver = std::function<std::vector<std::string>(const RoundContext&)>;

/// One trial of the configured learner. The observer runs on the rounds
/// selected by oracle_period.
RunReport run_trial(const ExperimentConfig& config, std::size_t trial,
                    const RoundObserver& observer = {});
RunReport run(const ExperimentConfig& config);

void write_csv(std::ostream& out, const RunReport& report);
std::string csv_string(const RunReport& report);

struct CouponSummary {
  std::size_t m = 0;
  std::size_t trials = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double exact = 0.0;
  std::optional<double> harmonic;  // m * H_m for uniform schedules
  std::vector<double> probabilities;
};

/// Expected draws to see every class: inclusion-exclusion over subsets.
double coupon_expectation(std::span<const double> probabilities);
/// m * H_m.
double harmonic_expectation(std::size_t m);

CouponSummary coupon(const ExperimentConfig& config);

struct VerifyReport {
  std::size_t trials = 0;
  std::size_t rounds_checked = 0;
  std::vector<std::string> failures;
  /// (trial, round) of the first failure, if any.
  std::optional<std::pair<std::size_t, std::size_t>> first_failure;

  bool ok() const { return failures.empty(); }
};

/// Invariant checks for one completed round; used by verify.
std::vector<std::string> check_round(const RoundContext& context);

/// Runs every trial with oracle checks (every round unless configured
/// otherwise) plus the cross-learner summary isomorphism check.
VerifyReport verify(const ExperimentConfig& config);

struct SweepRow {
  LearnerKind learner;
  std::size_t trial;
  RunRow row;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::vector<std::string> violations;
};

/// Both learners over shared seeds, reporting the rows at each requested n.
SweepReport sweep(const ExperimentConfig& config,
                  const std::vector<std::size_t>& rounds);
void write_sweep_csv(std::ostream& out, const SweepReport& report);

}  // namespace domlearn
