#include <sstream>

#include <gtest/gtest.h>

#include "fcwsim/errors.hpp"
#include "fcwsim/harness.hpp"
#include "trace_builders.hpp"

namespace fcwsim {
namespace {

std::vector<ScenarioTrace> small_fleet(std::size_t n = 6) {
  GenConfig cfg;
  cfg.n_scenarios = n;
  return generate_fleet(cfg);
}

TEST(RunScenario, ZeroLossReproducesTruth) {
  const auto fleet = small_fleet(3);
  for (const auto kind : {EstimatorKind::ConstantVelocity, EstimatorKind::ConstantAcceleration,
                          EstimatorKind::Kalman}) {
    for (const auto& trace : fleet) {
      const auto run = run_scenario(trace, kind, 0.0, 1, RunParams{});
      ASSERT_EQ(run.log.size(), trace.steps.size());
      for (const auto& rec : run.log) {
        ASSERT_EQ(rec.est_decision.warn, rec.truth_decision.warn);
      }
      EXPECT_EQ(*accuracy(run.counts), 1.0);
      EXPECT_EQ(run.counts.total(), trace.steps.size());
    }
  }
}

TEST(RunScenario, TotalLossConstantVelocityStaysExact) {
  const auto lv = testing::integrate_lv({40, 18, 0}, std::vector<double>(120, 0.0), 0.1);
  const auto trace = testing::make_trace("cv", lv, 25.0, 0.1);
  const auto run = run_scenario(trace, EstimatorKind::ConstantVelocity, 1.0, 7, RunParams{});
  EXPECT_EQ(run.mask, "1" + std::string(119, '0'));
  bool any_warning = false;
  for (const auto& rec : run.log) {
    ASSERT_EQ(rec.est.x, rec.truth.x);
    ASSERT_EQ(rec.est_decision, rec.truth_decision);
    any_warning = any_warning || rec.truth_decision.warn;
  }
  EXPECT_TRUE(any_warning);
}

TEST(RunScenario, DeterministicReplay) {
  const auto trace = small_fleet(1)[0];
  const auto a = run_scenario(trace, EstimatorKind::Kalman, 0.4, 99, RunParams{});
  const auto b = run_scenario(trace, EstimatorKind::Kalman, 0.4, 99, RunParams{});
  EXPECT_EQ(a.log, b.log);
  EXPECT_EQ(a.mask, b.mask);
  std::ostringstream ca, cb;
  write_steplog_csv(ca, a.log);
  write_steplog_csv(cb, b.log);
  EXPECT_EQ(ca.str(), cb.str());
}

TEST(RunScenario, RejectsMismatchedClock) {
  RunParams p;
  p.clock = SampleClock::from_rate(5.0);
  EXPECT_THROW(run_scenario(small_fleet(1)[0], EstimatorKind::Kalman, 0.1, 0, p), ConfigError);
}

TEST(RunScenario, TruthSideIndependentOfEstimatorAndLoss) {
  const auto trace = small_fleet(1)[0];
  const auto truth = truth_decisions(trace, CampParams{});
  for (const auto kind : {EstimatorKind::ConstantVelocity, EstimatorKind::Kalman}) {
    for (const double per : {0.0, 0.5, 0.9}) {
      const auto run = run_scenario(trace, kind, per, 3, RunParams{});
      for (std::size_t k = 0; k < truth.size(); ++k) {
        ASSERT_EQ(run.log[k].truth_decision, truth[k]);
      }
    }
  }
}

TEST(Sweep, CellStructureAndOrder) {
  const auto fleet = small_fleet(2);
  RunConfig cfg;
  cfg.estimators = {EstimatorKind::ConstantVelocity, EstimatorKind::ConstantAcceleration,
                    EstimatorKind::Kalman};
  cfg.pers = parse_per_grid("0.1:0.9:0.1");
  cfg.seeds = 2;
  const auto cells = sweep(fleet, cfg);
  ASSERT_EQ(cells.size(), 27u);
  EXPECT_EQ(cells[0].estimator, EstimatorKind::ConstantVelocity);
  EXPECT_EQ(cells[0].per, 0.1);
  EXPECT_EQ(cells[8].per, 0.9);
  EXPECT_EQ(cells[9].estimator, EstimatorKind::ConstantAcceleration);
  for (const auto& c : cells) {
    EXPECT_EQ(c.classified_steps, 2u * 2u * fleet[0].steps.size());
    EXPECT_EQ(c.scores.n, 4u);
    EXPECT_EQ(c.seed_mean_tp.size(), 2u);
  }
}

TEST(Sweep, ZeroLossGridIsPerfect) {
  RunConfig cfg;
  cfg.estimators = {EstimatorKind::ConstantVelocity, EstimatorKind::Kalman};
  cfg.pers = {0.0};
  cfg.seeds = 2;
  for (const auto& c : sweep(small_fleet(), cfg)) {
    EXPECT_EQ(*c.scores.mean_accuracy, 1.0);
  }
}

TEST(Sweep, SerialAndParallelAgreeBitwise) {
  const auto fleet = small_fleet(5);
  RunConfig cfg;
  cfg.estimators = {EstimatorKind::ConstantAcceleration, EstimatorKind::Kalman};
  cfg.pers = {0.2, 0.7};
  cfg.seeds = 3;
  cfg.threads = 1;
  const auto serial = sweep(fleet, cfg);
  cfg.threads = 4;
  const auto parallel = sweep(fleet, cfg);
  std::ostringstream a, b;
  write_summary_csv(a, serial);
  write_summary_csv(b, parallel);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(summary_json(serial, cfg, fleet.size()), summary_json(parallel, cfg, fleet.size()));
}

TEST(Sweep, AddingCellsDoesNotPerturbExistingOnes) {
  const auto fleet = small_fleet(3);
  RunConfig cfg;
  cfg.estimators = {EstimatorKind::ConstantVelocity};
  cfg.pers = {0.5};
  cfg.seeds = 2;
  const auto before = sweep(fleet, cfg);
  cfg.pers = {0.5, 0.8};
  cfg.seeds = 4;
  const auto after = sweep(fleet, cfg);
  EXPECT_EQ(before[0].seed_mean_tp[0], after[0].seed_mean_tp[0]);
  EXPECT_EQ(before[0].seed_mean_tp[1], after[0].seed_mean_tp[1]);
}

TEST(Sweep, ConfigErrors) {
  RunConfig cfg;
  cfg.pers = {0.1};
  EXPECT_THROW(sweep(small_fleet(1), cfg), ConfigError);
  cfg.estimators = {EstimatorKind::Kalman};
  cfg.pers = {1.2};
  EXPECT_THROW(sweep(small_fleet(1), cfg), ConfigError);
  cfg.pers = {0.1};
  cfg.seeds = 0;
  EXPECT_THROW(sweep(small_fleet(1), cfg), ConfigError);
}

TEST(PerGrid, Parsing) {
  const auto g = parse_per_grid("0.1:0.9:0.1");
  ASSERT_EQ(g.size(), 9u);
  EXPECT_EQ(g[2], 0.3);
  EXPECT_EQ(g[8], 0.9);
  EXPECT_EQ(parse_per_grid("0.3"), std::vector<double>{0.3});
  EXPECT_EQ(parse_per_grid("0,0.5,1"), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_THROW(parse_per_grid("0.1:0.9"), ConfigError);
  EXPECT_THROW(parse_per_grid("0:2:0.5"), ConfigError);
  EXPECT_THROW(parse_per_grid("x"), ConfigError);
}

TEST(Output, SummaryCsvHeaderAndPrecision) {
  SweepCell c;
  c.estimator = EstimatorKind::Kalman;
  c.per = 0.3;
  c.scores.mean_tp = 2.0 / 3.0;
  c.scores.mean_accuracy = 1.0;
  c.n_scenarios = 100;
  c.n_seeds = 50;
  std::ostringstream out;
  write_summary_csv(out, std::vector<SweepCell>{c});
  EXPECT_EQ(out.str(),
            "estimator,per,mean_tp,mean_accuracy,n_scenarios,n_seeds,n_undefined_tp\n"
            "kalman,0.3,0.666666667,1,100,50,0\n");
}

TEST(Output, StepLogColumns) {
  const auto run = run_scenario(small_fleet(1)[0], EstimatorKind::ConstantVelocity, 0.3, 1,
                                RunParams{});
  std::ostringstream out;
  write_steplog_csv(out, run.log);
  const auto text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "step,t,true_x,true_v,true_a,est_x,est_v,est_a,delivered_flag,"
            "r_w,r_d,bor,bor_case,warn_true,warn_est");
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')),
            run.log.size() + 1);
}

}  // namespace
}  // namespace fcwsim
