#include "fcwsim/scenarios.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "fcwsim/errors.hpp"
#include "fcwsim/rng.hpp"
#include "fcwsim/text_format.hpp"

namespace fcwsim {

namespace {

constexpr double kSamplingTolerance = 1e-9;

constexpr std::array<std::string_view, 7> kColumns = {"t",    "x_lv", "v_lv", "a_lv",
                                                      "x_fv", "v_fv", "a_fv"};
enum Col { kT, kXLv, kVLv, kALv, kXFv, kVFv, kAFv };

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::string row_prefix(const std::string& id, std::size_t row) {
  return id + ": row " + std::to_string(row) + ": ";
}

void check_range(const Range& r, const char* name) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
    throw ConfigError(std::string(name) + " range must be finite with lo <= hi");
  }
}

}  // namespace

std::vector<TimedState> ScenarioTrace::lv_states() const {
  std::vector<TimedState> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.lv);
  return out;
}

std::vector<TimedState> ScenarioTrace::fv_states() const {
  std::vector<TimedState> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.fv);
  return out;
}

void ScenarioTrace::validate() const {
  if (steps.size() < 2) throw ParseError(id + ": a trace needs at least two steps");
  if (!std::isfinite(t_s) || t_s <= 0.0) throw ParseError(id + ": sample period must be positive");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    for (const TimedState* ts : {&s.lv, &s.fv}) {
      const auto& v = ts->state;
      if (!std::isfinite(ts->t) || !std::isfinite(v.x) || !std::isfinite(v.v) ||
          !std::isfinite(v.a)) {
        throw ParseError(row_prefix(id, i + 1) + "non-finite value");
      }
      if (v.v < 0.0) throw ParseError(row_prefix(id, i + 1) + "negative speed");
      if (ts->t < 0.0) throw ParseError(row_prefix(id, i + 1) + "negative time");
    }
    if (s.lv.t != s.fv.t) throw ParseError(row_prefix(id, i + 1) + "LV and FV times differ");
    if (i > 0 && std::abs(s.lv.t - steps[i - 1].lv.t - t_s) > kSamplingTolerance) {
      throw ParseError(row_prefix(id, i + 1) + "non-uniform sampling");
    }
  }
  if (!(steps.front().lv.state.x - steps.front().fv.state.x > 0.0)) {
    throw ParseError(id + ": initial gap x_lv - x_fv must be positive");
  }
}

ScenarioTrace parse_csv(std::istream& in, const std::string& id) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::array<std::size_t, kColumns.size()> index{};
  std::size_t n_fields = 0;
  std::vector<std::array<double, kColumns.size()>> rows;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    if (!have_header) {
      for (std::size_t c = 0; c < kColumns.size(); ++c) {
        std::size_t found = fields.size();
        for (std::size_t f = 0; f < fields.size(); ++f) {
          if (fields[f] == kColumns[c]) found = f;
        }
        if (found == fields.size()) {
          throw ParseError(id + ": missing column '" + std::string(kColumns[c]) + "'");
        }
        index[c] = found;
      }
      n_fields = fields.size();
      have_header = true;
      continue;
    }

    const std::size_t row = rows.size() + 1;
    if (fields.size() != n_fields) {
      throw ParseError(row_prefix(id, row) + "expected " + std::to_string(n_fields) +
                       " fields, got " + std::to_string(fields.size()));
    }
    std::array<double, kColumns.size()> values{};
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      const auto v = parse_double(fields[index[c]]);
      if (!v || !std::isfinite(*v)) {
        throw ParseError(row_prefix(id, row) + "invalid or non-finite value in column '" +
                         std::string(kColumns[c]) + "'");
      }
      values[c] = *v;
    }
    if (values[kVLv] < 0.0) throw ParseError(row_prefix(id, row) + "negative speed v_lv");
    if (values[kVFv] < 0.0) throw ParseError(row_prefix(id, row) + "negative speed v_fv");
    rows.push_back(values);
  }

  if (!have_header) throw ParseError(id + ": empty file (header row required)");
  if (rows.size() < 2) throw ParseError(id + ": a trace needs at least two rows");

  ScenarioTrace trace;
  trace.id = id;
  trace.t_s = rows[1][kT] - rows[0][kT];
  trace.steps.reserve(rows.size());
  for (const auto& r : rows) {
    trace.steps.push_back({TimedState{r[kT], {r[kXLv], r[kVLv], r[kALv]}},
                           TimedState{r[kT], {r[kXFv], r[kVFv], r[kAFv]}}});
  }
  trace.validate();
  return trace;
}

ScenarioTrace load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_csv(in, path.stem().string());
}

void write_csv(std::ostream& out, const ScenarioTrace& trace) {
  out << "t,x_lv,v_lv,a_lv,x_fv,v_fv,a_fv\n";
  for (const auto& s : trace.steps) {
    out << format_exact(s.lv.t) << ',' << format_exact(s.lv.state.x) << ','
        << format_exact(s.lv.state.v) << ',' << format_exact(s.lv.state.a) << ','
        << format_exact(s.fv.state.x) << ',' << format_exact(s.fv.state.v) << ','
        << format_exact(s.fv.state.a) << '\n';
  }
}

void save_csv(const std::filesystem::path& path, const ScenarioTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_csv(out, trace);
}

void GenConfig::validate() const {
  if (n_scenarios == 0) throw ConfigError("n_scenarios must be at least 1");
  check_range(lv_speed, "LV speed");
  check_range(fv_speed, "FV speed");
  check_range(headway, "headway");
  check_range(lv_decel, "LV deceleration");
  check_range(onset, "brake onset");
  if (lv_speed.lo < 0.0) throw ConfigError("LV speeds must be non-negative");
  if (fv_speed.lo <= 0.0) throw ConfigError("FV speeds must be positive");
  if (headway.lo <= 0.0) throw ConfigError("headways must be positive");
  if (lv_decel.hi >= 0.0) throw ConfigError("LV decelerations must be negative");
  if (onset.lo < 0.0) throw ConfigError("brake onset must be non-negative");
  if (!(std::isfinite(t_s) && t_s > 0.0)) throw ConfigError("sample period must be positive");
  if (!(std::isfinite(duration) && duration >= t_s)) {
    throw ConfigError("duration must cover at least one sample period");
  }
}

ScenarioTrace generate_scenario(const GenConfig& cfg, std::size_t index) {
  cfg.validate();
  CounterRng rng = CounterRng(cfg.seed).split(index);
  const double v_fv = rng.next_in(cfg.fv_speed.lo, cfg.fv_speed.hi);
  const double v_lv0 = rng.next_in(cfg.lv_speed.lo, cfg.lv_speed.hi);
  const double headway = rng.next_in(cfg.headway.lo, cfg.headway.hi);
  const double decel = rng.next_in(cfg.lv_decel.lo, cfg.lv_decel.hi);
  const double onset_t = rng.next_in(cfg.onset.lo, cfg.onset.hi);

  const auto n_steps = static_cast<std::size_t>(std::llround(cfg.duration / cfg.t_s)) + 1;
  const auto onset_step = static_cast<std::size_t>(std::llround(onset_t / cfg.t_s));

  char id[32];
  std::snprintf(id, sizeof id, "s%03zu", index);

  ScenarioTrace trace;
  trace.id = id;
  trace.t_s = cfg.t_s;
  trace.steps.reserve(n_steps);

  VehicleState lv{headway * v_fv, v_lv0, 0.0};
  VehicleState fv{0.0, v_fv, 0.0};
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double t = static_cast<double>(k) * cfg.t_s;
    lv.a = (k >= onset_step && lv.v > 0.0) ? decel : 0.0;
    trace.steps.push_back({TimedState{t, lv}, TimedState{t, fv}});
    lv.x = step_position_ca(lv.x, lv.v, lv.a, cfg.t_s);
    lv.v = step_velocity_ca(lv.v, lv.a, cfg.t_s);
    fv.x = step_position_cv(fv.x, fv.v, cfg.t_s);
  }
  return trace;
}

std::vector<ScenarioTrace> generate_fleet(const GenConfig& cfg) {
  cfg.validate();
  std::vector<ScenarioTrace> fleet;
  fleet.reserve(cfg.n_scenarios);
  for (std::size_t i = 0; i < cfg.n_scenarios; ++i) fleet.push_back(generate_scenario(cfg, i));
  return fleet;
}

void write_fleet(const std::filesystem::path& dir, const std::vector<ScenarioTrace>& fleet) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json manifest;
  manifest["format"] = "fcwsim-fleet/1";
  manifest["scenarios"] = nlohmann::ordered_json::array();
  for (const auto& trace : fleet) {
    const std::string file = trace.id + ".csv";
    save_csv(dir / file, trace);
    manifest["scenarios"].push_back({{"id", trace.id}, {"path", file}, {"t_s", trace.t_s}});
  }
  std::ofstream out(dir / kManifestName, std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / kManifestName).string());
  out << manifest.dump(2) << '\n';
}

std::vector<ScenarioTrace> load_fleet(const std::filesystem::path& dir) {
  const auto manifest_path = dir / kManifestName;
  std::ifstream in(manifest_path);
  if (!in) throw ParseError("cannot open fleet manifest " + manifest_path.string());

  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(manifest_path.string() + ": " + e.what());
  }
  if (!manifest.contains("scenarios") || !manifest["scenarios"].is_array()) {
    throw ParseError(manifest_path.string() + ": missing 'scenarios' array");
  }

  std::vector<ScenarioTrace> fleet;
  for (const auto& entry : manifest["scenarios"]) {
    if (!entry.contains("id") || !entry.contains("path") || !entry["id"].is_string() ||
        !entry["path"].is_string()) {
      throw ParseError(manifest_path.string() + ": scenario entry needs string 'id' and 'path'");
    }
    const auto id = entry["id"].get<std::string>();
    std::ifstream csv(dir / entry["path"].get<std::string>());
    if (!csv) throw ParseError("cannot open " + (dir / entry["path"].get<std::string>()).string());
    fleet.push_back(parse_csv(csv, id));
  }
  if (fleet.empty()) throw ParseError(manifest_path.string() + ": fleet is empty");
  return fleet;
}

}  // namespace fcwsim
