#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcwsim/camp_linear.hpp"
#include "fcwsim/estimators.hpp"
#include "fcwsim/kinematics.hpp"
#include "fcwsim/metrics.hpp"
#include "fcwsim/scenarios.hpp"

namespace fcwsim {

struct RunParams {
  CampParams camp;
  KalmanConfig kalman;
  SampleClock clock;

  void validate() const;
};

// One scenario step: exact and estimated LV state with the warning computed
// from each. The FV state is exact on both sides.
struct StepRecord {
  std::size_t step = 0;
  double t = 0.0;
  VehicleState truth;
  VehicleState est;
  bool delivered = false;
  WarningDecision truth_decision;
  WarningDecision est_decision;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

using StepLog = std::vector<StepRecord>;

struct ScenarioRun {
  StepLog log;
  ConfusionCounts counts;
  std::string mask;  // '1' delivered, '0' dropped
};

// channel -> estimator -> CAMP Linear (truth and estimate) -> confusion counts.
// Deterministic in (trace, kind, per, channel_seed, params). Throws
// ConfigError when the trace sample period disagrees with params.clock.
ScenarioRun run_scenario(const ScenarioTrace& trace, EstimatorKind kind, double per,
                         std::uint64_t channel_seed, const RunParams& params);

// Truth-side decisions only; identical for every estimator, PER and seed.
std::vector<WarningDecision> truth_decisions(const ScenarioTrace& trace, const CampParams& camp);

double mean_abs_position_error(const StepLog& log);

struct RunConfig {
  std::vector<EstimatorKind> estimators;
  std::vector<double> pers;
  std::size_t seeds = 1;
  RunParams params;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;  // 0 selects hardware concurrency

  void validate() const;
};

struct SweepCell {
  EstimatorKind estimator = EstimatorKind::ConstantVelocity;
  double per = 0.0;
  AggregateScores scores;  // over every (scenario, seed) run
  std::size_t n_scenarios = 0;
  std::size_t n_seeds = 0;
  std::uint64_t classified_steps = 0;
  double mean_abs_position_error = 0.0;
  // Scenario-averaged scores of each loss realization, in seed order.
  std::vector<std::optional<double>> seed_mean_tp;
  std::vector<std::optional<double>> seed_mean_accuracy;
};

// Every (estimator, per) cell averaged over scenarios x seeds. The channel
// seed of a replicate is derive_seed(master, scenario id, per index, seed
// index), shared by all estimators. Output order is estimators-major then
// PER, and results do not depend on cfg.threads.
std::vector<SweepCell> sweep(const std::vector<ScenarioTrace>& fleet, const RunConfig& cfg);

// "start:stop:step" (inclusive) or a comma-separated list.
std::vector<double> parse_per_grid(std::string_view spec);

void write_steplog_csv(std::ostream& out, const StepLog& log);
void write_summary_csv(std::ostream& out, std::span<const SweepCell> cells);
std::string summary_json(std::span<const SweepCell> cells, const RunConfig& cfg,
                         std::size_t n_scenarios);

}  // namespace fcwsim
