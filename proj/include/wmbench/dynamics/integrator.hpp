#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace wmbench {

using StateVector = std::vector<double>;

/// Autonomous right-hand side: writes dy/dt for state y into dydt.
using Derivative = std::function<void(std::span<const double> y, std::span<double> dydt)>;

/// A collision or contact rule. The event fires when `guard` crosses zero
/// from non-negative to negative inside a step; `resolve` is then applied
/// to the state at the localized event time and must leave guard >= 0.
struct EventSpec {
  std::string name;
  std::function<double(std::span<const double>)> guard;
  std::function<void(std::span<double>)> resolve;
};

struct EventRecord {
  std::string name;
  std::size_t event_index = 0;
  /// Time of the resolved state, measured from the start of the step.
  double time = 0.0;
  StateVector before;
  StateVector after;
};

using EventLog = std::vector<EventRecord>;

inline constexpr int kMaxEventsPerStep = 16;

/// Relative bisection tolerance on the event time (times dt).
inline constexpr double kEventTimeTolerance = 1e-10;

/// One classical fourth-order Runge-Kutta step. Quaternion blocks starting
/// at `quat_offsets` are renormalized afterwards. Throws NonFinite.
StateVector rk4_step(const Derivative& f, std::span<const double> y, double dt,
                     std::span<const std::size_t> quat_offsets = {});

/// `substeps` equal RK4 steps covering dt.
StateVector rk4_integrate(const Derivative& f, std::span<const double> y, double dt, int substeps,
                          std::span<const std::size_t> quat_offsets = {});

/// RK4 step with event localization. Each zero crossing inside the step is
/// bracketed by bisection to kEventTimeTolerance * dt, resolved, and the
/// remainder of the step integrated from there. Events are applied in time
/// order. Grazing contacts (guard stays >= 0 at the step end) never fire.
/// Throws EventStorm when more than kMaxEventsPerStep events fire in one dt.
StateVector step_with_events(const Derivative& f, std::span<const EventSpec> events,
                             std::span<const double> y, double dt,
                             std::span<const std::size_t> quat_offsets = {},
                             EventLog* log = nullptr);

}  // namespace wmbench
