#include <string>

#include "wmbench/core/error.hpp"
#include "wmbench/tasks/transitions.hpp"

namespace wmbench::tasks {

double param(const TaskParams& params, std::string_view name) {
  const auto it = params.find(std::string(name));
  if (it == params.end()) throw InvalidArgument("missing task parameter '" + std::string(name) + "'");
  return it->second;
}

StateVector step_free_fall(std::span<const double> s, const TaskParams& params, double dt,
                           EventLog* log) {
  const double g = param(params, "g");
  const double r = param(params, "radius");

  if (s[2] <= r && s[5] == 0.0) {
    // Supported by the floor: the normal force cancels gravity.
    const Derivative resting = [](std::span<const double> y, std::span<double> d) {
      d[0] = y[3];
      d[1] = y[4];
      d[2] = 0.0;
      d[3] = d[4] = d[5] = 0.0;
    };
    return rk4_step(resting, s, dt);
  }

  const Derivative gravity = [g](std::span<const double> y, std::span<double> d) {
    d[0] = y[3];
    d[1] = y[4];
    d[2] = y[5];
    d[3] = 0.0;
    d[4] = 0.0;
    d[5] = -g;
  };
  const EventSpec floor{
      "floor",
      [r](std::span<const double> y) { return y[2] - r; },
      [](std::span<double> y) { y[5] = -y[5]; },
  };
  return step_with_events(gravity, std::span(&floor, 1), s, dt, {}, log);
}

StateVector step_projectile(std::span<const double> s, const TaskParams& params, double dt,
                            EventLog* log) {
  return step_free_fall(s, params, dt, log);
}

}  // namespace wmbench::tasks
