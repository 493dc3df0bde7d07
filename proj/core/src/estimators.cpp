#include "fcwsim/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "fcwsim/errors.hpp"

namespace fcwsim {

namespace {

void require_initialized(bool initialized, const char* op) {
  if (!initialized) throw UsageError(std::string(op) + ": estimator not initialized");
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::ConstantVelocity:
      return "cv";
    case EstimatorKind::ConstantAcceleration:
      return "ca";
    case EstimatorKind::Kalman:
      return "kalman";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view name) {
  if (name == "cv") return EstimatorKind::ConstantVelocity;
  if (name == "ca") return EstimatorKind::ConstantAcceleration;
  if (name == "kalman") return EstimatorKind::Kalman;
  throw ConfigError("unknown estimator '" + std::string(name) + "' (expected cv, ca or kalman)");
}

void KalmanConfig::validate() const {
  if (!(std::isfinite(q) && q > 0.0)) throw ConfigError("kalman q must be positive");
  if (!(std::isfinite(r) && r > 0.0)) throw ConfigError("kalman r must be positive");
  if (!(std::isfinite(p0) && p0 >= 0.0)) throw ConfigError("kalman p0 must be non-negative");
}

KalmanState KalmanState::from_bsm(const Bsm& bsm, const KalmanConfig& cfg) {
  KalmanState s;
  s.mean(kVelocityIndex) = bsm.state.v;
  s.mean(kPositionIndex) = bsm.state.x;
  s.cov = cfg.p0 * Eigen::Matrix2d::Identity();
  s.held_input = bsm.state.a;
  s.initialized = true;
  return s;
}

DeadReckonState cv_predict(const DeadReckonState& s, double dt) {
  require_initialized(s.initialized, "cv_predict");
  DeadReckonState next = s;
  next.est.x = step_position_cv(s.est.x, s.est.v, dt);
  next.est.a = 0.0;
  return next;
}

DeadReckonState ca_predict(const DeadReckonState& s, double dt) {
  require_initialized(s.initialized, "ca_predict");
  DeadReckonState next = s;
  next.est.x = step_position_ca(s.est.x, s.est.v, s.est.a, dt);
  next.est.v = step_velocity_ca(s.est.v, s.est.a, dt);
  return next;
}

Eigen::Matrix2d process_noise(double q, double dt) {
  const double dt2 = dt * dt;
  Eigen::Matrix2d qm;
  qm << dt, dt2 / 2.0,
        dt2 / 2.0, dt2 * dt / 3.0;
  return q * qm;
}

KalmanState kalman_predict(const KalmanState& s, double dt, double q) {
  require_initialized(s.initialized, "kalman_predict");
  if (!std::isfinite(dt) || dt <= 0.0) throw DomainError("kalman_predict: dt must be positive");

  const double v = s.mean(kVelocityIndex);
  const double x = s.mean(kPositionIndex);
  const double u = s.held_input;

  KalmanState next = s;
  // Same arithmetic as the kinematic step functions, so a filter sitting on a
  // noiseless trajectory reproduces it bit for bit.
  if (v >= 0.0) {
    next.mean(kPositionIndex) = step_position_ca(x, v, u, dt);
    next.mean(kVelocityIndex) = step_velocity_ca(v, u, dt);
  } else {
    next.mean(kPositionIndex) = x + v * dt + 0.5 * u * dt * dt;
    next.mean(kVelocityIndex) = v + u * dt;
  }

  Eigen::Matrix2d f;
  f << 1.0, 0.0,
       dt, 1.0;
  next.cov = f * s.cov * f.transpose() + process_noise(q, dt);
  next.cov = 0.5 * (next.cov + next.cov.transpose());
  return next;
}

KalmanState kalman_correct(const KalmanState& s, double measured_x, double r) {
  require_initialized(s.initialized, "kalman_correct");
  if (!std::isfinite(measured_x)) throw DomainError("kalman_correct: non-finite measurement");
  if (!std::isfinite(r) || r <= 0.0) throw DomainError("kalman_correct: r must be positive");

  const Eigen::RowVector2d c(0.0, 1.0);
  const double innovation_var = s.cov(kPositionIndex, kPositionIndex) + r;
  const Eigen::Vector2d gain = s.cov.col(kPositionIndex) / innovation_var;
  const double innovation = measured_x - s.mean(kPositionIndex);

  KalmanState next = s;
  next.mean = s.mean + gain * innovation;
  const Eigen::Matrix2d i_kc = Eigen::Matrix2d::Identity() - gain * c;
  next.cov = i_kc * s.cov * i_kc.transpose() + gain * r * gain.transpose();
  next.cov = 0.5 * (next.cov + next.cov.transpose());
  return next;
}

VehicleState kalman_emit(const KalmanState& s) {
  return VehicleState{s.mean(kPositionIndex), std::max(0.0, s.mean(kVelocityIndex)),
                      s.held_input};
}

std::vector<VehicleState> estimate_stream(std::span<const ReceivedSlot> slots,
                                          EstimatorKind kind, const SampleClock& clock,
                                          const KalmanConfig& kcfg) {
  clock.validate();
  if (slots.empty()) return {};
  if (!slots.front().delivered()) {
    throw UsageError("estimate_stream: first slot must be delivered");
  }
  const double dt = clock.t_s;

  std::vector<VehicleState> out;
  out.reserve(slots.size());

  if (kind == EstimatorKind::Kalman) {
    kcfg.validate();
    KalmanState s = KalmanState::from_bsm(*slots.front().payload, kcfg);
    out.push_back(kalman_emit(s));
    for (std::size_t i = 1; i < slots.size(); ++i) {
      s = kalman_predict(s, dt, kcfg.q);
      if (const auto& bsm = slots[i].payload) {
        s = kalman_correct(s, bsm->state.x, kcfg.r);
        s.held_input = bsm->state.a;
      }
      out.push_back(kalman_emit(s));
    }
    return out;
  }

  DeadReckonState s = DeadReckonState::from_bsm(*slots.front().payload);
  out.push_back(s.est);
  for (std::size_t i = 1; i < slots.size(); ++i) {
    if (const auto& bsm = slots[i].payload) {
      s = DeadReckonState::from_bsm(*bsm);
    } else if (kind == EstimatorKind::ConstantVelocity) {
      s = cv_predict(s, dt);
    } else {
      s = ca_predict(s, dt);
    }
    out.push_back(s.est);
  }
  return out;
}

}  // namespace fcwsim
