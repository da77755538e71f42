#include "wmbench/core/quat.hpp"

#include <algorithm>
#include <cmath>

namespace wmbench {

Quat Quat::from_axis_angle(const Vec3& axis, double angle) {
  const double n = wmbench::norm(axis);
  if (n == 0.0) return identity();
  const double s = std::sin(0.5 * angle) / n;
  return {std::cos(0.5 * angle), axis.x * s, axis.y * s, axis.z * s};
}

double Quat::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quat Quat::normalized() const {
  const double n = norm();
  return {w / n, x / n, y / n, z / n};
}

Vec3 quat_rotate(const Quat& q, const Vec3& v) {
  // v' = v + 2w (u x v) + 2 u x (u x v), u = vector part.
  const Vec3 u = q.vec();
  const Vec3 t = cross(u, v) * 2.0;
  return v + t * q.w + cross(u, t);
}

double rotation_angle(const Quat& q) {
  const double s = wmbench::norm(q.vec());
  return 2.0 * std::atan2(s, std::abs(q.w));
}

Quat quat_from_two_vectors(const Vec3& from, const Vec3& to) {
  const double c = std::clamp(dot(from, to), -1.0, 1.0);
  Vec3 axis = cross(from, to);
  if (norm(axis) < 1e-15) {
    if (c > 0.0) return Quat::identity();
    // Antiparallel: any axis orthogonal to `from`.
    axis = std::abs(from.x) < 0.9 ? cross(from, Vec3{1, 0, 0}) : cross(from, Vec3{0, 1, 0});
    return Quat::from_axis_angle(axis, M_PI);
  }
  return Quat::from_axis_angle(axis, std::acos(c));
}

}  // namespace wmbench
