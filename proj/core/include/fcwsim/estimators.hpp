#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "fcwsim/channel.hpp"
#include "fcwsim/kinematics.hpp"

namespace fcwsim {

enum class EstimatorKind { ConstantVelocity, ConstantAcceleration, Kalman };

// "cv", "ca", "kalman".
std::string_view to_string(EstimatorKind kind);
EstimatorKind parse_estimator_kind(std::string_view name);

// Dead-reckoning state shared by the CV and CA estimators.
struct DeadReckonState {
  VehicleState est;
  bool initialized = false;

  static DeadReckonState from_bsm(const Bsm& bsm) { return {bsm.state, true}; }
};

struct KalmanConfig {
  double q = 1.0;    // white-noise acceleration intensity, (m/s^2)^2
  double r = 0.01;   // position measurement variance, m^2
  double p0 = 1.0;   // initial covariance scale

  void validate() const;
};

// Double-integrator filter with state ordered [v; x]. The received
// acceleration is the control input; only position is measured.
struct KalmanState {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  double held_input = 0.0;
  bool initialized = false;

  static KalmanState from_bsm(const Bsm& bsm, const KalmanConfig& cfg);
};

inline constexpr int kVelocityIndex = 0;
inline constexpr int kPositionIndex = 1;

// Position advanced at the held speed; acceleration reported as zero.
DeadReckonState cv_predict(const DeadReckonState& s, double dt);

// Position and speed advanced under the held acceleration, stopping at rest.
DeadReckonState ca_predict(const DeadReckonState& s, double dt);

// White-noise-acceleration process covariance integrated over dt.
Eigen::Matrix2d process_noise(double q, double dt);

// Time update with the zero-order-hold discretization
//   F = [[1, 0], [dt, 1]],  G = [dt; dt^2/2].
// A braking input that would carry the mean speed below zero inside the
// interval stops the mean at rest instead.
KalmanState kalman_predict(const KalmanState& s, double dt, double q);

// Position measurement update (C = [0 1]) in Joseph form, then symmetrized.
KalmanState kalman_correct(const KalmanState& s, double measured_x, double r);

VehicleState kalman_emit(const KalmanState& s);

// One estimate per slot. Delivered slots reset CV/CA to the received state
// and run predict+correct for the Kalman filter; dropped slots run the
// estimator's prediction only.
std::vector<VehicleState> estimate_stream(std::span<const ReceivedSlot> slots,
                                          EstimatorKind kind, const SampleClock& clock,
                                          const KalmanConfig& kcfg = {});

}  // namespace fcwsim
