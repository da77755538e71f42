#pragma once

// Per-task transition functions. Each advances a task state by one dt;
// layouts are documented next to each function.

#include <span>

#include "wmbench/core/quat.hpp"
#include "wmbench/core/vec3.hpp"
#include "wmbench/dynamics/integrator.hpp"
#include "wmbench/tasks/task.hpp"

namespace wmbench::tasks {

/// Throws InvalidArgument when `name` is missing.
double param(const TaskParams& params, std::string_view name);

// [px, py, pz, vx, vy, vz]; gravity along -z, elastic floor at pz = radius.
// A ball resting on the floor (pz <= radius, vz == 0) is supported.
StateVector step_free_fall(std::span<const double> s, const TaskParams& params, double dt,
                           EventLog* log = nullptr);
StateVector step_projectile(std::span<const double> s, const TaskParams& params, double dt,
                            EventLog* log = nullptr);

// [px, py, vx, vy] inside the square [0, box]^2.
StateVector step_bouncing_ball(std::span<const double> s, const TaskParams& params, double dt,
                               EventLog* log = nullptr);

// [p1x, p1y, v1x, v1y, p2x, p2y, v2x, v2y], two discs of equal radius.
StateVector step_elastic_collision(std::span<const double> s, const TaskParams& params, double dt,
                                   EventLog* log = nullptr);

/// Exchanges the normal velocity components of two touching discs using
/// the 1D elastic formulas along the line of centres. No-op if separating.
void resolve_disc_contact(std::span<double> s, double mass_1, double mass_2);

// Observed [px, py, vx, vy] on a circle of radius `length`; integrated in
// (theta, omega) with theta'' = F / (m R), F = action * force_scale.
StateVector step_circular(std::span<const double> s, double action, const TaskParams& params,
                          double dt, double force_scale);

// [s_along, v_along]; s'' = g (sin(angle) - friction cos(angle)).
StateVector step_inclined(std::span<const double> s, const TaskParams& params, double dt);
double inclined_acceleration(const TaskParams& params);

// [theta, omega]; theta'' = -(g / L) sin(theta).
StateVector step_pendulum(std::span<const double> s, const TaskParams& params, double dt);
/// Energy per unit mass, 1/2 L^2 w^2 - g L cos(theta).
double pendulum_energy(std::span<const double> s, const TaskParams& params);

// [x, v, phi, omega] for a solid cylinder rolling without slip.
StateVector step_rolling(std::span<const double> s, const TaskParams& params, double dt);

// [qw, qx, qy, qz, wx, wy, wz], body-frame angular velocity, torque free.
StateVector step_rotation(std::span<const double> s, const TaskParams& params, double dt);

// Symmetric top pivoting on its apex. Same layout as rotation.
StateVector step_spin(std::span<const double> s, const TaskParams& params, double dt);

inline constexpr double kSpinMaxTilt = 85.0 * M_PI / 180.0;  // rad
inline constexpr double kSpinSettleTimeConstantSteps = 5.0;   // x dt
inline constexpr double kSpinRestSpeed = 1e-3;                // rad/s
inline constexpr int kPendulumSubsteps = 8;
inline constexpr int kSpinSubsteps = 8;

struct TopGeometry {
  Vec3 inertia;            // principal moments about the pivot (I1, I1, I3), kg m^2
  double pivot_to_cm = 0;  // m
  double mass = 0;         // kg
};

/// Solid cone of base `radius` and `height` pivoting on its apex.
TopGeometry spin_geometry(const TaskParams& params);
/// Angle between the symmetry axis and world +z, in [0, pi].
double spin_tilt(const Quat& q);
/// 1/2 w^T I w with body-frame w.
double spin_kinetic_energy(std::span<const double> s, const TaskParams& params);

}  // namespace wmbench::tasks
