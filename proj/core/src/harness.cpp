#include "fcwsim/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "fcwsim/channel.hpp"
#include "fcwsim/errors.hpp"
#include "fcwsim/rng.hpp"
#include "fcwsim/text_format.hpp"

namespace fcwsim {

namespace {

constexpr double kPeriodTolerance = 1e-9;

struct ReplicateResult {
  ConfusionCounts counts;
  double abs_error_sum = 0.0;
  std::uint64_t steps = 0;
};

ReplicateResult run_replicate(const ScenarioTrace& trace, EstimatorKind kind, double per,
                              std::uint64_t seed, const RunParams& params) {
  const ScenarioRun run = run_scenario(trace, kind, per, seed, params);
  ReplicateResult r;
  r.counts = run.counts;
  for (const auto& rec : run.log) r.abs_error_sum += std::abs(rec.est.x - rec.truth.x);
  r.steps = run.log.size();
  return r;
}

// Rounds through the 9-digit text form so JSON output matches the CSVs.
double round_g9(double v) { return *parse_double(format_g9(v)); }

nlohmann::ordered_json json_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return round_g9(*v);
}

std::optional<double> sample_sd(const std::vector<std::optional<double>>& xs) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& x : xs) {
    if (x) {
      sum += *x;
      ++n;
    }
  }
  if (n < 2) return std::nullopt;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (const auto& x : xs) {
    if (x) ss += (*x - mean) * (*x - mean);
  }
  return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace

void RunParams::validate() const {
  camp.validate();
  kalman.validate();
  clock.validate();
}

std::vector<WarningDecision> truth_decisions(const ScenarioTrace& trace, const CampParams& camp) {
  std::vector<WarningDecision> out;
  out.reserve(trace.steps.size());
  for (const auto& s : trace.steps) {
    out.push_back(evaluate(gap_between(s.fv.state, s.lv.state, camp), s.fv.state, s.lv.state,
                           camp));
  }
  return out;
}

ScenarioRun run_scenario(const ScenarioTrace& trace, EstimatorKind kind, double per,
                         std::uint64_t channel_seed, const RunParams& params) {
  params.validate();
  if (std::abs(trace.t_s - params.clock.t_s) > kPeriodTolerance) {
    throw ConfigError("scenario " + trace.id + " is sampled every " + format_g9(trace.t_s) +
                      " s but the clock period is " + format_g9(params.clock.t_s) + " s");
  }

  const std::vector<TimedState> lv = trace.lv_states();
  const auto slots = transmit(lv, ChannelConfig{per, channel_seed});
  const auto estimates = estimate_stream(slots, kind, params.clock, params.kalman);
  const auto truth = truth_decisions(trace, params.camp);

  ScenarioRun run;
  run.mask = mask_string(slots);
  run.log.reserve(trace.steps.size());
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const VehicleState& fv = trace.steps[k].fv.state;
    StepRecord rec;
    rec.step = k;
    rec.t = trace.steps[k].lv.t;
    rec.truth = lv[k].state;
    rec.est = estimates[k];
    rec.delivered = slots[k].delivered();
    rec.truth_decision = truth[k];
    rec.est_decision = evaluate(gap_between(fv, rec.est, params.camp), fv, rec.est, params.camp);
    run.counts = classify_step(rec.truth_decision.warn, rec.est_decision.warn, run.counts);
    run.log.push_back(rec);
  }
  return run;
}

double mean_abs_position_error(const StepLog& log) {
  if (log.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& rec : log) sum += std::abs(rec.est.x - rec.truth.x);
  return sum / static_cast<double>(log.size());
}

void RunConfig::validate() const {
  if (estimators.empty()) throw ConfigError("at least one estimator is required");
  if (pers.empty()) throw ConfigError("at least one PER value is required");
  for (const double p : pers) ChannelConfig{p, 0}.validate();
  if (seeds == 0) throw ConfigError("at least one seed per cell is required");
  params.validate();
}

std::vector<SweepCell> sweep(const std::vector<ScenarioTrace>& fleet, const RunConfig& cfg) {
  cfg.validate();
  if (fleet.empty()) throw ConfigError("sweep: empty fleet");

  const std::size_t n_scen = fleet.size();
  const std::size_t n_seeds = cfg.seeds;
  const std::size_t n_per = cfg.pers.size();
  const std::size_t n_cells = cfg.estimators.size() * n_per;
  const std::size_t per_cell = n_scen * n_seeds;
  const std::size_t n_tasks = n_cells * per_cell;

  // Task index = (cell * n_scen + scenario) * n_seeds + seed; cell = est * n_per + per.
  std::vector<ReplicateResult> results(n_tasks);
  auto run_task = [&](std::size_t task) {
    const std::size_t seed_idx = task % n_seeds;
    const std::size_t scen_idx = (task / n_seeds) % n_scen;
    const std::size_t cell = task / per_cell;
    const std::size_t per_idx = cell % n_per;
    const EstimatorKind kind = cfg.estimators[cell / n_per];
    const ScenarioTrace& trace = fleet[scen_idx];
    const std::uint64_t seed = derive_seed(cfg.master_seed, trace.id, per_idx, seed_idx);
    results[task] = run_replicate(trace, kind, cfg.pers[per_idx], seed, cfg.params);
  };

  unsigned workers = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n_tasks)));

  if (workers == 1) {
    for (std::size_t t = 0; t < n_tasks; ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t t = next.fetch_add(1); t < n_tasks; t = next.fetch_add(1)) {
            try {
              run_task(t);
            } catch (...) {
              std::lock_guard lock(failure_mu);
              if (!failure) failure = std::current_exception();
              next.store(n_tasks);
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<SweepCell> cells;
  cells.reserve(n_cells);
  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    SweepCell out;
    out.estimator = cfg.estimators[cell / n_per];
    out.per = cfg.pers[cell % n_per];
    out.n_scenarios = n_scen;
    out.n_seeds = n_seeds;

    std::vector<ConfusionCounts> counts;
    counts.reserve(per_cell);
    double abs_err = 0.0;
    for (std::size_t i = 0; i < per_cell; ++i) {
      const auto& r = results[cell * per_cell + i];
      counts.push_back(r.counts);
      abs_err += r.abs_error_sum;
      out.classified_steps += r.steps;
    }
    out.scores = aggregate(counts);
    out.mean_abs_position_error =
        out.classified_steps ? abs_err / static_cast<double>(out.classified_steps) : 0.0;

    for (std::size_t s = 0; s < n_seeds; ++s) {
      std::vector<ConfusionCounts> by_seed;
      by_seed.reserve(n_scen);
      for (std::size_t i = 0; i < n_scen; ++i) by_seed.push_back(counts[i * n_seeds + s]);
      const AggregateScores agg = aggregate(by_seed);
      out.seed_mean_tp.push_back(agg.mean_tp);
      out.seed_mean_accuracy.push_back(agg.mean_accuracy);
    }
    cells.push_back(std::move(out));
  }
  return cells;
}

std::vector<double> parse_per_grid(std::string_view spec) {
  auto number = [&](std::string_view s) {
    const auto v = parse_double(s);
    if (!v || !std::isfinite(*v)) {
      throw ConfigError("invalid number '" + std::string(s) + "' in PER grid");
    }
    return *v;
  };

  std::vector<double> out;
  if (spec.find(':') != std::string_view::npos) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string_view::npos || spec.find(':', c2 + 1) != std::string_view::npos) {
      throw ConfigError("PER grid must be start:stop:step, got '" + std::string(spec) + "'");
    }
    const double start = number(spec.substr(0, c1));
    const double stop = number(spec.substr(c1 + 1, c2 - c1 - 1));
    const double step = number(spec.substr(c2 + 1));
    if (step <= 0.0 || stop < start) {
      throw ConfigError("PER grid needs step > 0 and stop >= start");
    }
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) {
      // Snap to 1e-12 so 0.1 + 2 * 0.1 prints and compares as 0.3.
      const double v = start + static_cast<double>(i) * step;
      out.push_back(std::round(v * 1e12) / 1e12);
    }
  } else {
    std::size_t start = 0;
    while (start <= spec.size()) {
      const auto comma = spec.find(',', start);
      const auto token = spec.substr(start, comma == std::string_view::npos ? spec.npos
                                                                            : comma - start);
      out.push_back(number(token));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  for (const double p : out) ChannelConfig{p, 0}.validate();
  return out;
}

void write_steplog_csv(std::ostream& out, const StepLog& log) {
  out << "step,t,true_x,true_v,true_a,est_x,est_v,est_a,delivered_flag,"
         "r_w,r_d,bor,bor_case,warn_true,warn_est\n";
  for (const auto& r : log) {
    const auto& d = r.est_decision;
    out << r.step << ',' << format_g9(r.t) << ',' << format_g9(r.truth.x) << ','
        << format_g9(r.truth.v) << ',' << format_g9(r.truth.a) << ',' << format_g9(r.est.x)
        << ',' << format_g9(r.est.v) << ',' << format_g9(r.est.a) << ','
        << (r.delivered ? 1 : 0) << ',' << format_g9(d.r_w) << ',' << format_g9(d.r_d) << ','
        << format_g9(d.bor) << ',' << to_string(d.bor_case) << ','
        << (r.truth_decision.warn ? 1 : 0) << ',' << (d.warn ? 1 : 0) << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const SweepCell> cells) {
  out << "estimator,per,mean_tp,mean_accuracy,n_scenarios,n_seeds,n_undefined_tp\n";
  for (const auto& c : cells) {
    out << to_string(c.estimator) << ',' << format_g9(c.per) << ','
        << format_g9(c.scores.mean_tp) << ',' << format_g9(c.scores.mean_accuracy) << ','
        << c.n_scenarios << ',' << c.n_seeds << ',' << c.scores.n_undefined_tp << '\n';
  }
}

std::string summary_json(std::span<const SweepCell> cells, const RunConfig& cfg,
                         std::size_t n_scenarios) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["format"] = "fcwsim-sweep/1";
  j["rng"] = std::string(CounterRng::kVersion);

  auto& c = j["config"];
  c["master_seed"] = cfg.master_seed;
  c["seeds"] = cfg.seeds;
  c["n_scenarios"] = n_scenarios;
  c["sample_period_s"] = round_g9(cfg.params.clock.t_s);
  c["t_d"] = round_g9(cfg.params.camp.t_d);
  c["eps_v"] = round_g9(cfg.params.camp.eps_v);
  c["min_decel"] = round_g9(cfg.params.camp.min_decel);
  c["length_offset"] = round_g9(cfg.params.camp.length_offset);
  c["kalman_q"] = round_g9(cfg.params.kalman.q);
  c["kalman_r"] = round_g9(cfg.params.kalman.r);
  c["kalman_p0"] = round_g9(cfg.params.kalman.p0);
  c["estimators"] = ordered_json::array();
  for (const auto k : cfg.estimators) c["estimators"].push_back(std::string(to_string(k)));
  c["per"] = ordered_json::array();
  for (const double p : cfg.pers) c["per"].push_back(round_g9(p));

  j["cells"] = ordered_json::array();
  for (const auto& cell : cells) {
    ordered_json e;
    e["estimator"] = std::string(to_string(cell.estimator));
    e["per"] = round_g9(cell.per);
    e["mean_tp"] = json_number(cell.scores.mean_tp);
    e["mean_accuracy"] = json_number(cell.scores.mean_accuracy);
    e["n_scenarios"] = cell.n_scenarios;
    e["n_seeds"] = cell.n_seeds;
    e["n_runs"] = cell.scores.n;
    e["n_undefined_tp"] = cell.scores.n_undefined_tp;
    e["classified_steps"] = cell.classified_steps;
    e["mean_abs_position_error_m"] = round_g9(cell.mean_abs_position_error);
    e["seed_sd_tp"] = json_number(sample_sd(cell.seed_mean_tp));
    e["seed_sd_accuracy"] = json_number(sample_sd(cell.seed_mean_accuracy));
    e["seed_mean_tp"] = ordered_json::array();
    e["seed_mean_accuracy"] = ordered_json::array();
    for (const auto& v : cell.seed_mean_tp) e["seed_mean_tp"].push_back(json_number(v));
    for (const auto& v : cell.seed_mean_accuracy) e["seed_mean_accuracy"].push_back(json_number(v));
    j["cells"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

}  // namespace fcwsim
