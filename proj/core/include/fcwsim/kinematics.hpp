#pragma once

#include <cstdint>

namespace fcwsim {

// Longitudinal state of one vehicle. SI units; decelerations are negative.
struct VehicleState {
  double x = 0.0;  // position along the lane, m
  double v = 0.0;  // speed, m/s (never negative)
  double a = 0.0;  // acceleration, m/s^2

  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

struct TimedState {
  double t = 0.0;  // seconds since scenario start
  VehicleState state;

  friend bool operator==(const TimedState&, const TimedState&) = default;
};

// Fixed-rate sampling clock. The default period is 10 Hz.
struct SampleClock {
  double t_s = 0.1;
  std::uint64_t step_index = 0;

  static SampleClock from_rate(double hz);
  double time() const { return static_cast<double>(step_index) * t_s; }
  void validate() const;
};

// Throws DomainError unless every field is finite and v >= 0.
void validate(const VehicleState& s);

// x + v*dt.
double step_position_cv(double x, double v, double dt);

// max(0, v + a*dt); braking never reverses the vehicle.
double step_velocity_ca(double v, double a, double dt);

// Constant-acceleration displacement over dt. When braking brings the vehicle
// to rest inside the interval, integrates only up to the stopping time -v/a.
double step_position_ca(double x, double v, double a, double dt);

}  // namespace fcwsim
