// fcwsim: packet-loss impact on a CAMP Linear forward collision warning.
//
//   fcwsim gen   --n 100 --seed 1 --out fleet/
//   fcwsim run   --fleet fleet/ --scenario s000 --estimator ca --per 0.3 --seed 0 --out s000.csv
//   fcwsim sweep --fleet fleet/ --estimators cv,ca,kalman --per 0.1:0.9:0.1 --seeds 50 --out out/
//
// Exit codes: 0 success, 1 I/O failure, 2 configuration error, 3 input parse error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fcwsim/errors.hpp"
#include "fcwsim/harness.hpp"
#include "fcwsim/rng.hpp"
#include "fcwsim/scenarios.hpp"
#include "fcwsim/text_format.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitParse = 3;

struct CommonOptions {
  double td = fcwsim::CampParams{}.t_d;
  double rate = 10.0;
  double kalman_q = fcwsim::KalmanConfig{}.q;
  double kalman_r = fcwsim::KalmanConfig{}.r;
  double kalman_p0 = fcwsim::KalmanConfig{}.p0;
  double eps_v = fcwsim::CampParams{}.eps_v;
  double min_decel = fcwsim::CampParams{}.min_decel;
  double length_offset = 0.0;
  std::uint64_t master_seed = 0;

  fcwsim::RunParams params() const {
    fcwsim::RunParams p;
    p.camp = {td, eps_v, min_decel, length_offset};
    p.kalman = {kalman_q, kalman_r, kalman_p0};
    p.clock = fcwsim::SampleClock::from_rate(rate);
    return p;
  }
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--td", o.td, "Driver and brake reaction time, s")->capture_default_str();
  cmd->add_option("--rate", o.rate, "Sampling and broadcast rate, Hz")->capture_default_str();
  cmd->add_option("--kalman-q", o.kalman_q, "Process noise intensity, (m/s^2)^2")
      ->capture_default_str();
  cmd->add_option("--kalman-r", o.kalman_r, "Position measurement variance, m^2")
      ->capture_default_str();
  cmd->add_option("--kalman-p0", o.kalman_p0, "Initial covariance scale")->capture_default_str();
  cmd->add_option("--eps-v", o.eps_v, "LV stationary speed threshold, m/s")->capture_default_str();
  cmd->add_option("--min-decel", o.min_decel, "Deceleration magnitude floor, m/s^2")
      ->capture_default_str();
  cmd->add_option("--length-offset", o.length_offset, "Subtracted from x_LV - x_FV, m")
      ->capture_default_str();
  cmd->add_option("--master-seed", o.master_seed, "Master seed for channel substreams")
      ->capture_default_str();
}

fcwsim::Range parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  const auto lo = fcwsim::parse_double(text.substr(0, colon));
  const auto hi = colon == std::string::npos ? lo : fcwsim::parse_double(text.substr(colon + 1));
  if (!lo || !hi) {
    throw fcwsim::ConfigError(std::string(flag) + " expects LO:HI or a single value, got '" +
                              text + "'");
  }
  return {*lo, *hi};
}

std::vector<fcwsim::EstimatorKind> parse_estimators(const std::string& list) {
  std::vector<fcwsim::EstimatorKind> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    out.push_back(fcwsim::parse_estimator_kind(
        list.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fcwsim::Error("cannot write " + path.string());
  out << content;
  if (!out) throw fcwsim::Error("write failed for " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packet-loss evaluation of a CAMP Linear forward collision warning"};
  app.require_subcommand(1);

  // gen
  fcwsim::GenConfig gen_cfg;
  std::string gen_out;
  std::string lv_speed = "15:30", fv_speed = "15:30", headway = "0.8:2.5", decel = "-8:-2",
              onset = "2:5";
  double gen_rate = 10.0;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic braking fleet");
  gen->add_option("--n", gen_cfg.n_scenarios, "Number of scenarios")->capture_default_str();
  gen->add_option("--seed", gen_cfg.seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--lv-speed", lv_speed, "LV cruise speed range LO:HI, m/s")->capture_default_str();
  gen->add_option("--fv-speed", fv_speed, "FV cruise speed range LO:HI, m/s")->capture_default_str();
  gen->add_option("--headway", headway, "Headway range LO:HI, s")->capture_default_str();
  gen->add_option("--decel", decel, "LV braking range LO:HI, m/s^2 (negative)")
      ->capture_default_str();
  gen->add_option("--onset", onset, "Brake onset range LO:HI, s")->capture_default_str();
  gen->add_option("--duration", gen_cfg.duration, "Scenario length, s")->capture_default_str();
  gen->add_option("--rate", gen_rate, "Sampling rate, Hz")->capture_default_str();

  // run
  CommonOptions run_opts;
  std::string run_fleet, run_scenario_id, run_estimator = "ca", run_out, run_mask_out;
  double run_per = 0.3;
  std::uint64_t run_seed = 0;
  auto* run = app.add_subcommand("run", "Run one scenario and write its per-step trace");
  run->add_option("--fleet", run_fleet, "Fleet directory (with manifest.json)")->required();
  run->add_option("--scenario", run_scenario_id, "Scenario id")->required();
  run->add_option("--estimator", run_estimator, "cv, ca or kalman")->capture_default_str();
  run->add_option("--per", run_per, "Packet error ratio")->capture_default_str();
  run->add_option("--seed", run_seed, "Loss realization index")->capture_default_str();
  run->add_option("--out", run_out, "Step log CSV path")->required();
  run->add_option("--mask-out", run_mask_out, "Optional file for the 0/1 loss mask line");
  add_common(run, run_opts);

  // sweep
  CommonOptions sweep_opts;
  std::string sweep_fleet, sweep_estimators = "cv,ca,kalman", sweep_per = "0.1:0.9:0.1",
              sweep_out;
  std::size_t sweep_seeds = 50;
  unsigned sweep_threads = 0;
  auto* sw = app.add_subcommand("sweep", "Sweep estimators x PER and write summary CSV/JSON");
  sw->add_option("--fleet", sweep_fleet, "Fleet directory (with manifest.json)")->required();
  sw->add_option("--estimators", sweep_estimators, "Comma-separated estimators")
      ->capture_default_str();
  sw->add_option("--per", sweep_per, "PER grid start:stop:step or a comma list")
      ->capture_default_str();
  sw->add_option("--seeds", sweep_seeds, "Loss realizations per scenario")->capture_default_str();
  sw->add_option("--threads", sweep_threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  sw->add_option("--out", sweep_out, "Output directory")->required();
  add_common(sw, sweep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (gen->parsed()) {
      gen_cfg.lv_speed = parse_range(lv_speed, "--lv-speed");
      gen_cfg.fv_speed = parse_range(fv_speed, "--fv-speed");
      gen_cfg.headway = parse_range(headway, "--headway");
      gen_cfg.lv_decel = parse_range(decel, "--decel");
      gen_cfg.onset = parse_range(onset, "--onset");
      gen_cfg.t_s = fcwsim::SampleClock::from_rate(gen_rate).t_s;
      const auto fleet = fcwsim::generate_fleet(gen_cfg);
      fcwsim::write_fleet(gen_out, fleet);
      std::cout << "wrote " << fleet.size() << " scenarios to " << gen_out << "\n";
      return 0;
    }

    if (run->parsed()) {
      const auto params = run_opts.params();
      params.validate();
      const auto kind = fcwsim::parse_estimator_kind(run_estimator);
      const auto fleet = fcwsim::load_fleet(run_fleet);
      const auto it = std::find_if(fleet.begin(), fleet.end(),
                                   [&](const auto& t) { return t.id == run_scenario_id; });
      if (it == fleet.end()) {
        throw fcwsim::ConfigError("scenario '" + run_scenario_id + "' not in fleet");
      }
      // Same substream a sweep uses for (scenario, first PER, seed index).
      const auto seed = fcwsim::derive_seed(run_opts.master_seed, it->id, 0, run_seed);
      const auto result = fcwsim::run_scenario(*it, kind, run_per, seed, params);

      std::ostringstream csv;
      fcwsim::write_steplog_csv(csv, result.log);
      write_file(run_out, csv.str());
      if (!run_mask_out.empty()) write_file(run_mask_out, result.mask + "\n");

      const auto tp = fcwsim::true_positive(result.counts);
      const auto acc = fcwsim::accuracy(result.counts);
      std::cout << it->id << " " << fcwsim::to_string(kind) << " per=" << fcwsim::format_g9(run_per)
                << " tp=" << (tp ? fcwsim::format_g9(*tp) : "undefined")
                << " accuracy=" << (acc ? fcwsim::format_g9(*acc) : "undefined") << "\n";
      return 0;
    }

    if (sw->parsed()) {
      fcwsim::RunConfig cfg;
      cfg.estimators = parse_estimators(sweep_estimators);
      cfg.pers = fcwsim::parse_per_grid(sweep_per);
      cfg.seeds = sweep_seeds;
      cfg.params = sweep_opts.params();
      cfg.master_seed = sweep_opts.master_seed;
      cfg.threads = sweep_threads;
      cfg.validate();
      const auto fleet = fcwsim::load_fleet(sweep_fleet);
      const auto cells = fcwsim::sweep(fleet, cfg);

      std::ostringstream csv;
      fcwsim::write_summary_csv(csv, cells);
      write_file(fs::path(sweep_out) / "summary.csv", csv.str());
      write_file(fs::path(sweep_out) / "summary.json",
                 fcwsim::summary_json(cells, cfg, fleet.size()));
      std::cout << csv.str();
      return 0;
    }
  } catch (const fcwsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fcwsim::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
