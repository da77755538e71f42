#pragma once

#include "wmbench/core/vec3.hpp"

namespace wmbench {

/// Unit quaternion in Hamilton convention, scalar first. Represents the
/// rotation from the body (or camera) frame to the world frame.
struct Quat {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr Quat identity() { return {}; }
  static Quat from_axis_angle(const Vec3& axis, double angle);

  constexpr Quat conjugate() const { return {w, -x, -y, -z}; }
  constexpr Vec3 vec() const { return {x, y, z}; }
  double norm() const;
  Quat normalized() const;

  constexpr bool operator==(const Quat&) const = default;
};

/// Hamilton product a ⊗ b.
constexpr Quat quat_mul(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quat operator*(const Quat& a, const Quat& b) { return quat_mul(a, b); }

/// q v q*, expanded so that no intermediate quaternion is formed.
Vec3 quat_rotate(const Quat& q, const Vec3& v);

/// Rotation angle of q in [0, pi].
double rotation_angle(const Quat& q);

/// Shortest-arc rotation taking unit vector `from` onto unit vector `to`.
Quat quat_from_two_vectors(const Vec3& from, const Vec3& to);

}  // namespace wmbench
