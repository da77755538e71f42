#include "wmbench/geometry/camera.hpp"

#include <cmath>
#include <string>

#include "wmbench/core/error.hpp"

namespace wmbench::geometry {

Intrinsics::Intrinsics(int width, int height, double fov_y)
    : width_(width), height_(height), fov_y_(fov_y) {
  if (width <= 0 || height <= 0) {
    throw InvalidArgument("image size " + std::to_string(width) + "x" + std::to_string(height));
  }
  if (!(fov_y > 0.0 && fov_y < M_PI)) throw InvalidArgument("fov_y " + std::to_string(fov_y));
}

double Intrinsics::focal() const { return height_ / (2.0 * std::tan(0.5 * fov_y_)); }

Vec3 world_to_camera(const CameraPose& pose, const Vec3& p_world) {
  return quat_rotate(pose.orientation.conjugate(), p_world - pose.position);
}

Projection project(const CameraPose& pose, const Intrinsics& intr, const Vec3& p_world) {
  const Vec3 p = world_to_camera(pose, p_world);
  const double f = intr.focal();
  const double depth = -p.z;
  Projection out;
  out.u = intr.cx() + f * (p.x / depth);
  out.v = intr.cy() - f * (p.y / depth);
  out.visible = p.z < -kNearPlane && out.u >= 0.0 && out.u <= intr.width() && out.v >= 0.0 &&
                out.v <= intr.height();
  return out;
}

Vec3 back_project(const CameraPose& pose, const Intrinsics& intr, double u, double v, double depth) {
  const double f = intr.focal();
  const Vec3 p_cam{(u - intr.cx()) / f * depth, -(v - intr.cy()) / f * depth, -depth};
  return pose.position + quat_rotate(pose.orientation, p_cam);
}

CameraPose step_camera(const CameraPose& pose, std::span<const double> action) {
  if (action.size() != 6) {
    throw ActionOutOfRange("camera action needs 6 components, got " + std::to_string(action.size()));
  }
  for (std::size_t i = 0; i < 6; ++i) {
    if (!(action[i] >= -1.0 && action[i] <= 1.0)) {
      throw ActionOutOfRange("camera action[" + std::to_string(i) + "] = " + std::to_string(action[i]));
    }
  }
  const Vec3 delta{action[0] * kMaxTranslationStep, action[1] * kMaxTranslationStep,
                   action[2] * kMaxTranslationStep};
  CameraPose next = pose;
  next.position = pose.position + quat_rotate(pose.orientation, delta);

  const Quat yaw = Quat::from_axis_angle({0, 1, 0}, action[3] * kMaxRotationStep);
  const Quat pitch = Quat::from_axis_angle({1, 0, 0}, action[4] * kMaxRotationStep);
  const Quat roll = Quat::from_axis_angle({0, 0, 1}, action[5] * kMaxRotationStep);
  if (action[3] != 0.0 || action[4] != 0.0 || action[5] != 0.0) {
    next.orientation = (pose.orientation * yaw * pitch * roll).normalized();
  }
  return next;
}

}  // namespace wmbench::geometry
