#include <algorithm>
#include <array>
#include <cmath>

#include "wmbench/tasks/transitions.hpp"

namespace wmbench::tasks {
namespace {

constexpr std::array<std::size_t, 1> kQuatOffsets{0};

Quat orientation_of(std::span<const double> s) { return {s[0], s[1], s[2], s[3]}; }

// q' = q (0, w) / 2 with body-frame w stored after the quaternion.
void quaternion_kinematics(std::span<const double> y, std::span<double> d) {
  const Quat dq = quat_mul(orientation_of(y), Quat{0.0, y[4], y[5], y[6]});
  d[0] = 0.5 * dq.w;
  d[1] = 0.5 * dq.x;
  d[2] = 0.5 * dq.y;
  d[3] = 0.5 * dq.z;
}

// Rotates q so that its symmetry axis sits at exactly `tilt` from +z,
// keeping the azimuth of the axis.
Quat clamp_tilt(const Quat& q, double tilt) {
  const Vec3 axis = quat_rotate(q, {0, 0, 1});
  double az = std::atan2(axis.y, axis.x);
  if (std::hypot(axis.x, axis.y) == 0.0) az = 0.0;
  const Vec3 target{std::sin(tilt) * std::cos(az), std::sin(tilt) * std::sin(az), std::cos(tilt)};
  return (quat_from_two_vectors(axis, target) * q).normalized();
}

double mechanical_energy(std::span<const double> s, const TopGeometry& top, double g) {
  const Vec3 i = top.inertia;
  const double kinetic = 0.5 * (i.x * s[4] * s[4] + i.y * s[5] * s[5] + i.z * s[6] * s[6]);
  return kinetic + top.mass * g * top.pivot_to_cm * std::cos(spin_tilt(orientation_of(s)));
}

}  // namespace

StateVector step_rotation(std::span<const double> s, const TaskParams&, double dt) {
  const Derivative f = [](std::span<const double> y, std::span<double> d) {
    quaternion_kinematics(y, d);
    d[4] = d[5] = d[6] = 0.0;
  };
  return rk4_step(f, s, dt, kQuatOffsets);
}

TopGeometry spin_geometry(const TaskParams& params) {
  const double m = param(params, "mass");
  const double a = param(params, "radius");
  const double h = param(params, "height");
  // Solid cone about its apex.
  const double transverse = 3.0 / 20.0 * m * a * a + 3.0 / 5.0 * m * h * h;
  const double axial = 3.0 / 10.0 * m * a * a;
  return {{transverse, transverse, axial}, 0.75 * h, m};
}

double spin_tilt(const Quat& q) {
  const Vec3 axis = quat_rotate(q, {0, 0, 1});
  return std::acos(std::clamp(axis.z, -1.0, 1.0));
}

double spin_kinetic_energy(std::span<const double> s, const TaskParams& params) {
  const Vec3 inertia = spin_geometry(params).inertia;
  return 0.5 * (inertia.x * s[4] * s[4] + inertia.y * s[5] * s[5] + inertia.z * s[6] * s[6]);
}

StateVector step_spin(std::span<const double> s, const TaskParams& params, double dt) {
  const TopGeometry top = spin_geometry(params);
  const double g = param(params, "g");
  const double damping = param(params, "damping");
  const Vec3 inertia = top.inertia;
  const Vec3 cm_body{0.0, 0.0, top.pivot_to_cm};
  const Vec3 weight{0.0, 0.0, -top.mass * g};

  const bool settling = std::cos(spin_tilt(orientation_of(s))) <= std::cos(kSpinMaxTilt) + 1e-9;
  if (settling) {
    const double speed = std::sqrt(s[4] * s[4] + s[5] * s[5] + s[6] * s[6]);
    if (speed < kSpinRestSpeed) {
      StateVector rest(s.begin(), s.end());
      rest[4] = rest[5] = rest[6] = 0.0;
      return rest;
    }
    const double rate = 1.0 / (kSpinSettleTimeConstantSteps * dt);
    const Derivative decay = [rate](std::span<const double> y, std::span<double> d) {
      quaternion_kinematics(y, d);
      d[4] = -rate * y[4];
      d[5] = -rate * y[5];
      d[6] = -rate * y[6];
    };
    StateVector next = rk4_integrate(decay, s, dt, kSpinSubsteps, kQuatOffsets);
    const Quat q = clamp_tilt(orientation_of(next), kSpinMaxTilt);
    next[0] = q.w;
    next[1] = q.x;
    next[2] = q.y;
    next[3] = q.z;
    if (std::sqrt(next[4] * next[4] + next[5] * next[5] + next[6] * next[6]) < kSpinRestSpeed) {
      next[4] = next[5] = next[6] = 0.0;
    }
    return next;
  }

  const Derivative euler = [&](std::span<const double> y, std::span<double> d) {
    quaternion_kinematics(y, d);
    const Quat q = orientation_of(y);
    const Vec3 w{y[4], y[5], y[6]};
    const Vec3 iw{inertia.x * w.x, inertia.y * w.y, inertia.z * w.z};
    const Vec3 torque_world = cross(quat_rotate(q, cm_body), weight);
    const Vec3 torque_body = quat_rotate(q.conjugate(), torque_world);
    const Vec3 rhs = cross(iw, w) + torque_body - w * damping;
    d[4] = rhs.x / inertia.x;
    d[5] = rhs.y / inertia.y;
    d[6] = rhs.z / inertia.z;
  };
  StateVector next = rk4_integrate(euler, s, dt, kSpinSubsteps, kQuatOffsets);
  if (spin_tilt(orientation_of(next)) > kSpinMaxTilt) {
    // Ground contact: lifting the axis back to the limit raises the
    // potential energy, so the contact absorbs at least that much kinetic
    // energy and never adds energy overall.
    const Quat q = clamp_tilt(orientation_of(next), kSpinMaxTilt);
    next[0] = q.w;
    next[1] = q.x;
    next[2] = q.y;
    next[3] = q.z;
    const double cap = mechanical_energy(s, top, g);
    const double total = mechanical_energy(next, top, g);
    if (total > cap) {
      const double kinetic = spin_kinetic_energy(next, params);
      const double factor = std::sqrt(std::max(0.0, 1.0 - (total - cap) / kinetic));
      next[4] *= factor;
      next[5] *= factor;
      next[6] *= factor;
    }
  }
  return next;
}

}  // namespace wmbench::tasks
