#pragma once

#include <span>

#include "wmbench/core/quat.hpp"
#include "wmbench/core/vec3.hpp"

namespace wmbench::geometry {

/// Extrinsics. `orientation` maps camera-frame vectors to the world frame.
/// The camera looks along its -z axis with x right and y up.
struct CameraPose {
  Vec3 position;
  Quat orientation;

  bool operator==(const CameraPose&) const = default;
};

/// Pinhole intrinsics derived from vertical field of view and resolution.
/// Pixel origin is the top-left corner with v growing downward.
class Intrinsics {
 public:
  /// Throws InvalidArgument unless width, height > 0 and 0 < fov_y < pi.
  Intrinsics(int width, int height, double fov_y);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double fov_y() const noexcept { return fov_y_; }
  double focal() const;
  double cx() const noexcept { return 0.5 * width_; }
  double cy() const noexcept { return 0.5 * height_; }

  /// Pixel <-> [-1, 1] coordinates, per axis.
  double normalize_u(double u) const { return (u - cx()) / cx(); }
  double normalize_v(double v) const { return (v - cy()) / cy(); }
  double pixel_u(double un) const { return cx() + un * cx(); }
  double pixel_v(double vn) const { return cy() + vn * cy(); }

 private:
  int width_;
  int height_;
  double fov_y_;
};

inline constexpr double kNearPlane = 1e-3;            // m
inline constexpr double kMaxTranslationStep = 0.05;   // m per step at |a| = 1
inline constexpr double kMaxRotationStep = 2.0 * M_PI / 180.0;  // rad per step at |a| = 1

struct Projection {
  double u = 0.0;  // px
  double v = 0.0;  // px
  bool visible = false;
};

/// World point -> camera frame via the inverse rigid transform.
Vec3 world_to_camera(const CameraPose& pose, const Vec3& p_world);

Projection project(const CameraPose& pose, const Intrinsics& intr, const Vec3& p_world);

/// Point on the ray through pixel (u, v) at distance `depth` in front of
/// the camera (depth = -z_cam > 0).
Vec3 back_project(const CameraPose& pose, const Intrinsics& intr, double u, double v, double depth);

/// Applies a 6-dof camera action in [-1, 1]^6: translation a[0..3] in the
/// camera frame, then intrinsic yaw (about y), pitch (about x) and roll
/// (about z) increments a[3..6]. Throws ActionOutOfRange.
CameraPose step_camera(const CameraPose& pose, std::span<const double> action);

}  // namespace wmbench::geometry
