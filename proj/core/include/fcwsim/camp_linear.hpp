#pragma once

#include <string_view>

#include "fcwsim/kinematics.hpp"

namespace fcwsim {

struct CampParams {
  double t_d = 1.6;            // driver plus brake reaction time, s
  double eps_v = 0.5;          // LV speed at or below which it counts as stationary, m/s
  double min_decel = 0.1;      // floor on |d_rqd| and |d_LV|, m/s^2
  double length_offset = 0.0;  // subtracted from x_LV - x_FV for bumper-referenced gaps, m

  void validate() const;
};

enum class BorCase { Case1, Case2, Case3 };

// "1", "2", "3".
std::string_view to_string(BorCase c);

struct PredictedSpeeds {
  double fv = 0.0;
  double lv = 0.0;
};

struct BrakeOnset {
  double bor = 0.0;
  BorCase bor_case = BorCase::Case1;
};

struct WarningDecision {
  double r_w = 0.0;
  double r_d = 0.0;
  double bor = 0.0;
  BorCase bor_case = BorCase::Case1;
  double gap = 0.0;
  bool warn = false;

  friend bool operator==(const WarningDecision&, const WarningDecision&) = default;
};

// Speeds after t_d at constant acceleration, floored at zero.
PredictedSpeeds predict_speeds(const VehicleState& fv, const VehicleState& lv, double t_d);

// CAMP regression for the deceleration the FV needs to avoid a crash:
//   -5.3 + 0.68 a_LV + 2.57 [v_LV > 0] - 0.086 (v_FV - v_LVP)
// capped at -min_decel so the result always brakes.
double required_decel(double a_lv, double v_lv, double v_fv, double v_lvp,
                      double min_decel = CampParams{}.min_decel);

// LV braking deceleration fed to the brake-onset cases: min(a_LV, -min_decel)
// while the LV brakes, 0 when it is not braking.
double lv_decel(double a_lv, double min_decel = CampParams{}.min_decel);

// Brake onset range and the case that produced it.
//   Case1  LV stationary (v_LV <= eps_v):   v_FVP^2 / (2|d_rqd|)
//   Case2  LV still moving when FV stops:  (v_FVP - v_LVP)^2 / (2 (|d_rqd| - |d_LV|)),
//          zero unless the FV is closing and must out-brake the LV
//   Case3  LV stops before FV:             v_FVP^2 / (2|d_rqd|) - v_LVP^2 / (2|d_LV|)
// d_lv >= 0 means the LV is not braking and never stops. The result is
// clamped at zero. Throws UsageError if d_rqd >= 0.
BrakeOnset brake_onset_range(double v_fvp, double v_lvp, double d_rqd, double d_lv,
                             const VehicleState& lv_now, const CampParams& params);

// r_d, BOR and r_w = max(0, BOR + r_d) for the given pair of states. The
// returned decision has gap = 0 and warn = false.
WarningDecision warning_range(const VehicleState& fv, const VehicleState& lv,
                              const CampParams& params);

// Full decision; warns when gap <= r_w.
WarningDecision evaluate(double gap, const VehicleState& fv, const VehicleState& lv,
                         const CampParams& params);

// x_LV - x_FV - length_offset.
double gap_between(const VehicleState& fv, const VehicleState& lv, const CampParams& params);

}  // namespace fcwsim
