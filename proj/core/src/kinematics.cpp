#include "fcwsim/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcwsim/errors.hpp"

namespace fcwsim {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw DomainError(std::string("non-finite ") + name);
  }
}

void require_step(double dt) {
  require_finite(dt, "dt");
  if (dt <= 0.0) throw DomainError("dt must be positive");
}

}  // namespace

SampleClock SampleClock::from_rate(double hz) {
  if (!std::isfinite(hz) || hz <= 0.0) {
    throw ConfigError("sample rate must be positive, got " + std::to_string(hz));
  }
  return SampleClock{1.0 / hz, 0};
}

void SampleClock::validate() const {
  if (!std::isfinite(t_s) || t_s <= 0.0) {
    throw ConfigError("sample period must be positive");
  }
}

void validate(const VehicleState& s) {
  require_finite(s.x, "position");
  require_finite(s.v, "speed");
  require_finite(s.a, "acceleration");
  if (s.v < 0.0) throw DomainError("negative speed");
}

double step_position_cv(double x, double v, double dt) {
  require_finite(x, "position");
  require_finite(v, "speed");
  require_step(dt);
  return x + v * dt;
}

double step_velocity_ca(double v, double a, double dt) {
  require_finite(v, "speed");
  require_finite(a, "acceleration");
  require_step(dt);
  return std::max(0.0, v + a * dt);
}

double step_position_ca(double x, double v, double a, double dt) {
  require_finite(x, "position");
  require_finite(v, "speed");
  require_finite(a, "acceleration");
  require_step(dt);
  if (a < 0.0 && v >= 0.0 && v + a * dt < 0.0) {
    const double t_stop = -v / a;
    return x + v * t_stop + 0.5 * a * t_stop * t_stop;
  }
  return x + v * dt + 0.5 * a * dt * dt;
}

}  // namespace fcwsim
