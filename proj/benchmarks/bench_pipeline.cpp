#include <benchmark/benchmark.h>

#include "fcwsim/camp_linear.hpp"
#include "fcwsim/estimators.hpp"
#include "fcwsim/harness.hpp"
#include "fcwsim/scenarios.hpp"

namespace {

using namespace fcwsim;

const std::vector<ScenarioTrace>& fleet() {
  static const auto f = generate_fleet(GenConfig{});
  return f;
}

void BM_RunScenario(benchmark::State& state) {
  const auto kind = static_cast<EstimatorKind>(state.range(0));
  const auto& trace = fleet()[0];
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto run = run_scenario(trace, kind, 0.5, ++seed, RunParams{});
    benchmark::DoNotOptimize(run.counts);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(trace.steps.size()));
}
BENCHMARK(BM_RunScenario)
    ->Arg(static_cast<int>(EstimatorKind::ConstantVelocity))
    ->Arg(static_cast<int>(EstimatorKind::ConstantAcceleration))
    ->Arg(static_cast<int>(EstimatorKind::Kalman));

void BM_KalmanStep(benchmark::State& state) {
  auto s = KalmanState::from_bsm(Bsm{0, 0, {0, 25, 0}}, KalmanConfig{});
  s.held_input = -1.0;
  double x = 0.0;
  for (auto _ : state) {
    s = kalman_predict(s, 0.1, 1.0);
    x += 2.5;
    s = kalman_correct(s, x, 0.01);
    benchmark::DoNotOptimize(s.mean);
  }
}
BENCHMARK(BM_KalmanStep);

void BM_Evaluate(benchmark::State& state) {
  const CampParams params{};
  const VehicleState fv{0, 25, 0};
  VehicleState lv{30, 20, -4};
  for (auto _ : state) {
    lv.x += 1e-6;
    benchmark::DoNotOptimize(evaluate(gap_between(fv, lv, params), fv, lv, params));
  }
}
BENCHMARK(BM_Evaluate);

void BM_SweepCell(benchmark::State& state) {
  RunConfig cfg;
  cfg.estimators = {EstimatorKind::ConstantAcceleration};
  cfg.pers = {0.3};
  cfg.seeds = static_cast<std::size_t>(state.range(0));
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(fleet(), cfg));
  }
}
BENCHMARK(BM_SweepCell)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
