#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "domlearn/experiment.hpp"

using namespace domlearn;

TEST(Config, JsonOverlay) {
  ExperimentConfig c;
  apply_json_config(c, R"({"learner": "tireless", "k": 3, "m": 4, "density": 0.25,
                           "seed": 9, "schedule": "weighted:0.5,0.3,0.1,0.1",
                           "rounds": 12, "trials": 2, "oracle": "every=3",
                           "out": "x.csv", "sweep_n": [1, 2], "fault": "skip-revise"})");
  EXPECT_EQ(c.learner, LearnerKind::Tireless);
  EXPECT_EQ(c.k, 3u);
  EXPECT_EQ(c.m, 4u);
  EXPECT_DOUBLE_EQ(c.edge_density, 0.25);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_TRUE(std::holds_alternative<schedule::IidWeighted>(c.schedule));
  EXPECT_EQ(c.rounds, 12u);
  EXPECT_EQ(c.trials, 2u);
  EXPECT_EQ(c.oracle_period, 3u);
  EXPECT_EQ(c.output, "x.csv");
  EXPECT_EQ(c.sweep_rounds, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(c.fault, LearnerFault::SkipRevise);
}

TEST(Config, RejectsBadInput) {
  ExperimentConfig c;
  EXPECT_THROW(apply_json_config(c, "{"), std::invalid_argument);
  EXPECT_THROW(apply_json_config(c, "[1]"), std::invalid_argument);
  EXPECT_THROW(apply_json_config(c, R"({"colour": 1})"), std::invalid_argument);
  EXPECT_THROW(apply_json_config(c, R"({"k": "two"})"), std::invalid_argument);
  EXPECT_THROW(apply_json_config(c, R"({"learner": "lazy"})"), std::invalid_argument);
  EXPECT_THROW(load_config("/nonexistent/config.json"), std::invalid_argument);
}

TEST(Config, OraclePeriod) {
  EXPECT_EQ(parse_oracle_period("off"), 0u);
  EXPECT_EQ(parse_oracle_period("every"), 1u);
  EXPECT_EQ(parse_oracle_period("every=4"), 4u);
  EXPECT_THROW(parse_oracle_period("every=0"), std::invalid_argument);
  EXPECT_THROW(parse_oracle_period("every=x"), std::invalid_argument);
  EXPECT_THROW(parse_oracle_period("sometimes"), std::invalid_argument);
}

TEST(Config, Validation) {
  ExperimentConfig c;
  c.rounds = 0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.oracle_period = 1;
  c.rounds = kMaxCheckedRounds + 1;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.edge_density = 2.0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.schedule = schedule::Scripted{{0, 5}};
  EXPECT_THROW(validate(c), std::invalid_argument);
}

TEST(Config, NovelLastPrefixFillsTheRun) {
  ExperimentConfig c;
  c.rounds = 10;
  c.schedule = parse_schedule("novel-last");
  EXPECT_EQ(std::get<schedule::NovelLast>(resolve_schedule(c, 4)).prefix_len, 7u);
  c.rounds = 2;
  EXPECT_EQ(std::get<schedule::NovelLast>(resolve_schedule(c, 4)).prefix_len, 0u);
}

TEST(Bounds, Formulas) {
  EXPECT_EQ(bound_tireless(2, 5), 50u);
  EXPECT_EQ(bound_conservative_cnq(2, 10, 3), 20u);
  EXPECT_EQ(bound_conservative_errors(2, 10, 3), 84u);
  EXPECT_EQ(bound_conservative_cnq(3, 7, 1), 3u);
  EXPECT_EQ(bound_conservative_errors(3, 7, 1), 0u);
}

TEST(Run, CsvHeader) {
  ExperimentConfig c;
  c.rounds = 1;
  const std::string csv = csv_string(run(c));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "n,cnq_cum,htq_cum,errors_cum,observed_m,bound_tireless,bound_cons_cnq,"
            "bound_cons_err");
}

TEST(Run, TirelessThreeRounds) {
  ExperimentConfig c;
  c.learner = LearnerKind::Tireless;
  c.k = 1;
  c.rounds = 3;
  const RunReport report = run(c);
  ASSERT_TRUE(report.ok());
  ASSERT_EQ(report.rows.size(), 3u);
  EXPECT_EQ(report.rows.back().cnq_cum, 9u);
  EXPECT_EQ(report.rows.back().bound_tireless, 9u);
  EXPECT_EQ(report.rows.back().errors_cum, 0u);
}

TEST(Run, ConservativeWithinCostBound) {
  ExperimentConfig c;
  c.k = 2;
  c.m = 3;
  c.rounds = 10;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    c.seed = seed;
    const RunReport report = run(c);
    ASSERT_TRUE(report.ok());
    EXPECT_LE(report.rows.back().cnq_cum, 20u);
  }
}

TEST(Run, NovelLastCommitsBoundedErrors) {
  ExperimentConfig c;
  c.k = 2;
  c.m = 4;
  c.rounds = 12;
  c.oracle_period = 1;
  c.schedule = parse_schedule("novel-last");
  const RunReport report = run(c);
  ASSERT_TRUE(report.ok()) << report.violations.front();
  ASSERT_EQ(report.rows.size(), 12u);
  EXPECT_GT(report.rows.back().errors_cum, 0u);
  EXPECT_LE(report.rows.back().errors_cum, report.rows.back().bound_cons_err);
  EXPECT_EQ(report.coverage_round, 12u);
}

TEST(Run, ScriptedScheduleStopsCleanly) {
  ExperimentConfig c;
  c.m = 2;
  c.rounds = 10;
  c.schedule = schedule::Scripted{{0, 1, 1}};
  const RunReport report = run(c);
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(report.teacher_exhausted);
  EXPECT_EQ(report.rows.size(), 3u);
}

TEST(Run, ObservedMFollowsOracleSetting) {
  ExperimentConfig c;
  c.m = 4;
  c.rounds = 20;
  const RunReport off = run(c);
  c.oracle_period = 1;
  const RunReport on = run(c);
  ASSERT_EQ(off.rows.size(), on.rows.size());
  for (std::size_t i = 0; i < on.rows.size(); ++i) {
    // The conservative summary has one vertex per class of G[U].
    EXPECT_EQ(off.rows[i].observed_m, on.rows[i].observed_m);
  }
}

TEST(Run, Deterministic) {
  ExperimentConfig c;
  c.m = 5;
  c.k = 3;
  c.rounds = 40;
  c.seed = 77;
  EXPECT_EQ(csv_string(run(c)), csv_string(run(c)));
  c.learner = LearnerKind::Tireless;
  EXPECT_EQ(csv_string(run(c)), csv_string(run(c)));
}

TEST(Run, FaultsAreCaught) {
  ExperimentConfig c;
  c.m = 3;
  c.rounds = 20;
  c.fault = LearnerFault::ReducibleHypothesis;
  const RunReport reducible = run(c);
  ASSERT_FALSE(reducible.ok());
  EXPECT_NE(reducible.violations.front().find("round 1:"), std::string::npos);
  EXPECT_NE(reducible.violations.front().find("SC-1"), std::string::npos);

  c.fault = LearnerFault::SkipRevise;
  const RunReport skipped = run(c);
  ASSERT_FALSE(skipped.ok());
  EXPECT_NE(skipped.violations.front().find("SC-2"), std::string::npos);
}

// ---------------------------------------------------------------------------

TEST(Coupon, ExactValues) {
  const std::vector<double> three(3, 1.0 / 3.0);
  EXPECT_NEAR(coupon_expectation(three), 5.5, 1e-12);
  EXPECT_NEAR(harmonic_expectation(3), 5.5, 1e-12);
  const std::vector<double> five(5, 0.2);
  EXPECT_NEAR(coupon_expectation(five), 11.416666666666666, 1e-9);
  const std::vector<double> one{1.0};
  EXPECT_NEAR(coupon_expectation(one), 1.0, 1e-12);
  // Two coupons: 1/p + 1/q - 1.
  const std::vector<double> two{0.25, 0.75};
  EXPECT_NEAR(coupon_expectation(two), 4.0 + 4.0 / 3.0 - 1.0, 1e-12);
}

TEST(Coupon, SingleDomainHasNoVariance) {
  ExperimentConfig c;
  c.m = 1;
  c.trials = 100;
  const CouponSummary s = coupon(c);
  EXPECT_DOUBLE_EQ(s.mean, 1.0);
  EXPECT_DOUBLE_EQ(s.stddev, 0.0);
  EXPECT_DOUBLE_EQ(s.exact, 1.0);
}

TEST(Coupon, RejectsFiniteSchedules) {
  ExperimentConfig c;
  c.schedule = schedule::Scripted{{0, 1, 2}};
  EXPECT_THROW(coupon(c), std::invalid_argument);
}

TEST(Coupon, SimulationNearExact) {
  ExperimentConfig c;
  c.m = 4;
  c.trials = 5000;
  const CouponSummary s = coupon(c);
  ASSERT_TRUE(s.harmonic.has_value());
  EXPECT_NEAR(*s.harmonic, 4 * (1 + 0.5 + 1.0 / 3 + 0.25), 1e-12);
  EXPECT_NEAR(s.mean / s.exact, 1.0, 0.05);
}

// ---------------------------------------------------------------------------

TEST(Verify, ConservativePasses) {
  ExperimentConfig c;
  c.k = 3;
  c.m = 6;
  c.rounds = 40;
  c.trials = 5;
  const VerifyReport report = verify(c);
  EXPECT_TRUE(report.ok()) << report.failures.front();
  EXPECT_EQ(report.rounds_checked, 200u);
}

TEST(Verify, TirelessPasses) {
  ExperimentConfig c;
  c.learner = LearnerKind::Tireless;
  c.m = 5;
  c.rounds = 30;
  c.trials = 3;
  EXPECT_TRUE(verify(c).ok());
}

TEST(Verify, SkipReviseFailsAtFirstNovelVertex) {
  ExperimentConfig c;
  c.m = 4;
  c.rounds = 30;
  const RunReport clean = run(c);
  std::size_t first_novel = 0;
  for (const HtqRecord& h : clean.htq_log) {
    if (h.error_count > 0) {
      first_novel = h.round;
      break;
    }
  }
  ASSERT_GT(first_novel, 1u);

  c.fault = LearnerFault::SkipRevise;
  const VerifyReport report = verify(c);
  ASSERT_FALSE(report.ok());
  ASSERT_TRUE(report.first_failure.has_value());
  EXPECT_EQ(report.first_failure->second, first_novel);
  bool partition_failed = false;
  for (const auto& f : report.failures) {
    partition_failed = partition_failed || f.find("INV-2(a)") != std::string::npos;
  }
  EXPECT_TRUE(partition_failed);
}

// ---------------------------------------------------------------------------

TEST(Sweep, FirstRoundCostsK) {
  ExperimentConfig c;
  c.k = 3;
  const SweepReport report = sweep(c, {1});
  ASSERT_EQ(report.rows.size(), 2u);
  for (const SweepRow& row : report.rows) EXPECT_EQ(row.row.cnq_cum, 3u);
}

TEST(Sweep, QuadraticVersusLinear) {
  ExperimentConfig c;
  c.k = 2;
  c.m = 4;
  const SweepReport report = sweep(c, {10, 20, 40, 80});
  ASSERT_TRUE(report.violations.empty());
  std::vector<std::size_t> tireless;
  std::vector<std::size_t> conservative;
  for (const SweepRow& row : report.rows) {
    (row.learner == LearnerKind::Tireless ? tireless : conservative).push_back(row.row.cnq_cum);
  }
  ASSERT_EQ(tireless.size(), 4u);
  ASSERT_EQ(conservative.size(), 4u);
  const std::vector<std::size_t> ns{10, 20, 40, 80};
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_EQ(tireless[i], 4 * tireless[i - 1]);
    // At most m - 1 classification queries per added vertex.
    EXPECT_LE(conservative[i] - conservative[i - 1], (ns[i] - ns[i - 1]) * (c.m - 1));
  }
  EXPECT_LT(10 * conservative.back(), tireless.back());
}

TEST(Sweep, CsvIsDeterministic) {
  ExperimentConfig c;
  c.trials = 3;
  auto render = [&] {
    std::ostringstream out;
    write_sweep_csv(out, sweep(c, {5, 10}));
    return out.str();
  };
  const std::string first = render();
  EXPECT_EQ(first, render());
  EXPECT_EQ(first.substr(0, first.find('\n')),
            "learner,trial,n,cnq_cum,htq_cum,errors_cum,observed_m,bound_tireless,"
            "bound_cons_cnq,bound_cons_err");
}
