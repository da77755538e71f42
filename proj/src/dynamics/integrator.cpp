#include "wmbench/dynamics/integrator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wmbench/core/error.hpp"

namespace wmbench {
namespace {

void renormalize(std::span<double> y, std::span<const std::size_t> quat_offsets) {
  for (std::size_t off : quat_offsets) {
    const double n = std::sqrt(y[off] * y[off] + y[off + 1] * y[off + 1] + y[off + 2] * y[off + 2] +
                               y[off + 3] * y[off + 3]);
    for (std::size_t i = 0; i < 4; ++i) y[off + i] /= n;
  }
}

void require_finite(std::span<const double> y, const char* where) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) {
      throw NonFinite(std::string(where) + ": component " + std::to_string(i) + " is " +
                      std::to_string(y[i]));
    }
  }
}

}  // namespace

StateVector rk4_step(const Derivative& f, std::span<const double> y, double dt,
                     std::span<const std::size_t> quat_offsets) {
  const std::size_t n = y.size();
  StateVector k1(n), k2(n), k3(n), k4(n), tmp(n);

  f(y, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
  f(tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
  f(tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
  f(tmp, k4);

  StateVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  renormalize(out, quat_offsets);
  require_finite(out, "rk4_step");
  return out;
}

StateVector rk4_integrate(const Derivative& f, std::span<const double> y, double dt, int substeps,
                          std::span<const std::size_t> quat_offsets) {
  StateVector cur(y.begin(), y.end());
  const double h = dt / substeps;
  for (int i = 0; i < substeps; ++i) cur = rk4_step(f, cur, h, quat_offsets);
  return cur;
}

StateVector step_with_events(const Derivative& f, std::span<const EventSpec> events,
                             std::span<const double> y, double dt,
                             std::span<const std::size_t> quat_offsets, EventLog* log) {
  StateVector cur(y.begin(), y.end());
  double elapsed = 0.0;
  int fired = 0;
  const double tolerance = kEventTimeTolerance * dt;

  while (true) {
    const double remaining = dt - elapsed;
    StateVector trial = rk4_step(f, cur, remaining, quat_offsets);

    // Earliest crossing among all guards, bracketed as [lo, hi] with
    // guard(lo) >= 0 and guard(hi) < 0.
    std::size_t best = events.size();
    double best_lo = 0.0;
    double best_hi = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < events.size(); ++e) {
      const auto& guard = events[e].guard;
      if (!(guard(cur) >= 0.0) || !(guard(trial) < 0.0)) continue;
      double lo = 0.0;
      double hi = remaining;
      while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (guard(rk4_step(f, cur, mid, quat_offsets)) < 0.0) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      if (hi < best_hi) {
        best = e;
        best_lo = lo;
        best_hi = hi;
      }
    }
    if (best == events.size()) return trial;

    if (++fired > kMaxEventsPerStep) {
      throw EventStorm(std::to_string(fired) + " events within one step of " + std::to_string(dt) +
                       " s (last: " + events[best].name + ")");
    }
    StateVector at_event = best_lo > 0.0 ? rk4_step(f, cur, best_lo, quat_offsets) : cur;
    EventRecord record;
    if (log) record.before = at_event;
    events[best].resolve(at_event);
    elapsed += best_lo;
    if (log) {
      record.name = events[best].name;
      record.event_index = best;
      record.time = elapsed;
      record.after = at_event;
      log->push_back(std::move(record));
    }
    cur = std::move(at_event);
  }
}

}  // namespace wmbench
