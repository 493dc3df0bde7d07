#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fcwsim/kinematics.hpp"

namespace fcwsim {

struct ScenarioStep {
  TimedState lv;
  TimedState fv;
};

// Time-aligned LV/FV kinematics sampled every t_s seconds.
struct ScenarioTrace {
  std::string id;
  double t_s = 0.1;
  std::vector<ScenarioStep> steps;

  std::vector<TimedState> lv_states() const;
  std::vector<TimedState> fv_states() const;

  // Uniform sampling within 1e-9 s, at least two steps, finite values,
  // non-negative speeds, positive initial gap. Throws ParseError.
  void validate() const;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct GenConfig {
  std::size_t n_scenarios = 100;
  Range lv_speed{15.0, 30.0};  // m/s
  Range fv_speed{15.0, 30.0};  // m/s
  Range headway{0.8, 2.5};     // s, initial gap = headway * FV speed
  Range lv_decel{-8.0, -2.0};  // m/s^2
  Range onset{2.0, 5.0};       // s, rounded to the nearest sample
  double duration = 15.0;      // s
  double t_s = 0.1;            // s
  std::uint64_t seed = 1;

  void validate() const;
};

// Header "t,x_lv,v_lv,a_lv,x_fv,v_fv,a_fv" (any column order), one row per
// step. Errors name the 1-based data row.
ScenarioTrace parse_csv(std::istream& in, const std::string& id);
ScenarioTrace load_csv(const std::filesystem::path& path);

// Round-trip exact: load_csv(write_csv(trace)) reproduces every double.
void write_csv(std::ostream& out, const ScenarioTrace& trace);
void save_csv(const std::filesystem::path& path, const ScenarioTrace& trace);

// Both vehicles cruise; at the onset sample the LV brakes at a constant rate
// until rest while the FV holds its speed. Integrated step by step with
// step_position_ca / step_velocity_ca.
ScenarioTrace generate_scenario(const GenConfig& cfg, std::size_t index);
std::vector<ScenarioTrace> generate_fleet(const GenConfig& cfg);

// Writes one CSV per trace plus manifest.json listing ids and relative paths.
void write_fleet(const std::filesystem::path& dir, const std::vector<ScenarioTrace>& fleet);
// Reads manifest.json from dir and loads every listed trace.
std::vector<ScenarioTrace> load_fleet(const std::filesystem::path& dir);

inline constexpr const char* kManifestName = "manifest.json";

}  // namespace fcwsim
