#include <array>
#include <cmath>

#include "wmbench/tasks/transitions.hpp"

namespace wmbench::tasks {

StateVector step_circular(std::span<const double> s, double action, const TaskParams& params,
                          double dt, double force_scale) {
  const double radius = param(params, "length");
  const double mass = param(params, "mass");
  const double angular_accel = action * force_scale / (mass * radius);

  const std::array<double, 2> polar{std::atan2(s[1], s[0]),
                                    (s[0] * s[3] - s[1] * s[2]) / (radius * radius)};
  const Derivative f = [angular_accel](std::span<const double> y, std::span<double> d) {
    d[0] = y[1];
    d[1] = angular_accel;
  };
  const StateVector next = rk4_step(f, polar, dt);
  const double c = std::cos(next[0]);
  const double sn = std::sin(next[0]);
  return {radius * c, radius * sn, -radius * next[1] * sn, radius * next[1] * c};
}

double inclined_acceleration(const TaskParams& params) {
  const double angle = param(params, "angle");
  return param(params, "g") * (std::sin(angle) - param(params, "friction") * std::cos(angle));
}

StateVector step_inclined(std::span<const double> s, const TaskParams& params, double dt) {
  const double a = inclined_acceleration(params);
  const Derivative f = [a](std::span<const double> y, std::span<double> d) {
    d[0] = y[1];
    d[1] = a;
  };
  return rk4_step(f, s, dt);
}

StateVector step_pendulum(std::span<const double> s, const TaskParams& params, double dt) {
  const double k = param(params, "g") / param(params, "length");
  const Derivative f = [k](std::span<const double> y, std::span<double> d) {
    d[0] = y[1];
    d[1] = -k * std::sin(y[0]);
  };
  return rk4_integrate(f, s, dt, kPendulumSubsteps);
}

double pendulum_energy(std::span<const double> s, const TaskParams& params) {
  const double length = param(params, "length");
  return 0.5 * length * length * s[1] * s[1] - param(params, "g") * length * std::cos(s[0]);
}

StateVector step_rolling(std::span<const double> s, const TaskParams&, double dt) {
  // No-slip rolling on a flat plane: v and omega stay constant.
  const Derivative f = [](std::span<const double> y, std::span<double> d) {
    d[0] = y[1];
    d[1] = 0.0;
    d[2] = y[3];
    d[3] = 0.0;
  };
  return rk4_step(f, s, dt);
}

}  // namespace wmbench::tasks
