#include "fcwsim/camp_linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fcwsim/errors.hpp"

namespace fcwsim {

void CampParams::validate() const {
  if (!(std::isfinite(t_d) && t_d > 0.0)) throw ConfigError("reaction time t_d must be positive");
  if (!(std::isfinite(eps_v) && eps_v > 0.0)) throw ConfigError("eps_v must be positive");
  if (!(std::isfinite(min_decel) && min_decel > 0.0)) {
    throw ConfigError("min_decel must be positive");
  }
  if (!std::isfinite(length_offset)) throw ConfigError("length offset must be finite");
}

std::string_view to_string(BorCase c) {
  switch (c) {
    case BorCase::Case1:
      return "1";
    case BorCase::Case2:
      return "2";
    case BorCase::Case3:
      return "3";
  }
  return "?";
}

PredictedSpeeds predict_speeds(const VehicleState& fv, const VehicleState& lv, double t_d) {
  return {std::max(0.0, fv.v + fv.a * t_d), std::max(0.0, lv.v + lv.a * t_d)};
}

double required_decel(double a_lv, double v_lv, double v_fv, double v_lvp, double min_decel) {
  const double moving = v_lv > 0.0 ? 1.0 : 0.0;
  const double d = -5.3 + 0.68 * a_lv + 2.57 * moving - 0.086 * (v_fv - v_lvp);
  return std::min(d, -min_decel);
}

double lv_decel(double a_lv, double min_decel) {
  return a_lv < 0.0 ? std::min(a_lv, -min_decel) : 0.0;
}

BrakeOnset brake_onset_range(double v_fvp, double v_lvp, double d_rqd, double d_lv,
                             const VehicleState& lv_now, const CampParams& params) {
  if (!(d_rqd < 0.0)) throw UsageError("brake_onset_range: d_rqd must be negative");

  if (lv_now.v <= params.eps_v) {
    return {std::max(0.0, -v_fvp * v_fvp / (2.0 * d_rqd)), BorCase::Case1};
  }

  const double lv_brake = std::min(d_lv, 0.0);
  const double t_fv_stop = v_fvp / -d_rqd;
  const double t_lv_stop =
      lv_brake < 0.0 ? v_lvp / -lv_brake : std::numeric_limits<double>::infinity();

  if (t_lv_stop >= t_fv_stop) {
    double bor = 0.0;
    if (d_rqd < lv_brake && v_fvp > v_lvp) {
      const double dv = v_fvp - v_lvp;
      bor = -dv * dv / (2.0 * (d_rqd - lv_brake));
    }
    return {std::max(0.0, bor), BorCase::Case2};
  }

  const double bor = v_fvp * v_fvp / (-2.0 * d_rqd) - v_lvp * v_lvp / (-2.0 * lv_brake);
  return {std::max(0.0, bor), BorCase::Case3};
}

WarningDecision warning_range(const VehicleState& fv, const VehicleState& lv,
                              const CampParams& params) {
  const double t_d = params.t_d;
  const PredictedSpeeds p = predict_speeds(fv, lv, t_d);
  const double d_rqd = required_decel(lv.a, lv.v, fv.v, p.lv, params.min_decel);
  const BrakeOnset onset =
      brake_onset_range(p.fv, p.lv, d_rqd, lv_decel(lv.a, params.min_decel), lv, params);

  WarningDecision d;
  d.r_d = 0.5 * (fv.a - lv.a) * t_d * t_d + (fv.v - lv.v) * t_d;
  d.bor = onset.bor;
  d.bor_case = onset.bor_case;
  d.r_w = std::max(0.0, d.bor + d.r_d);
  return d;
}

WarningDecision evaluate(double gap, const VehicleState& fv, const VehicleState& lv,
                         const CampParams& params) {
  if (!std::isfinite(gap)) throw DomainError("evaluate: non-finite gap");
  WarningDecision d = warning_range(fv, lv, params);
  d.gap = gap;
  d.warn = gap <= d.r_w;
  return d;
}

double gap_between(const VehicleState& fv, const VehicleState& lv, const CampParams& params) {
  return lv.x - fv.x - params.length_offset;
}

}  // namespace fcwsim
