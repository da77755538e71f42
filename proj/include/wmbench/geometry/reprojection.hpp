#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wmbench/core/rng.hpp"
#include "wmbench/dynamics/integrator.hpp"
#include "wmbench/dynamics/state_layout.hpp"
#include "wmbench/geometry/camera.hpp"

namespace wmbench::geometry {

struct Keypoint {
  Vec3 world;
  double u = 0.0;  // normalized to [-1, 1]
  double v = 0.0;  // normalized to [-1, 1]
  bool visible = false;

  bool operator==(const Keypoint&) const = default;
};

/// Fully observable reprojection state. Invisible keypoints keep the last
/// pixel at which they were visible.
struct ReprojectionState {
  CameraPose camera;
  std::vector<Keypoint> keypoints;

  bool operator==(const ReprojectionState&) const = default;
};

inline constexpr std::size_t kDefaultKeypoints = 8;
inline constexpr std::size_t kCameraDims = 7;
inline constexpr std::size_t kDimsPerKeypoint = 6;
inline constexpr double kActionMomentum = 0.8;

StateLayout reprojection_layout(std::size_t keypoints);
ActionLayout camera_action_layout();

StateVector encode(const ReprojectionState& s);
ReprojectionState decode(std::span<const double> values);

/// Projects every keypoint from `camera`. Keypoints that are not visible
/// keep `previous` pixels (or the principal point when there is none).
ReprojectionState observe(const CameraPose& camera, const Intrinsics& intr,
                          std::span<const Vec3> world, const ReprojectionState* previous = nullptr);

ReprojectionState step_reprojection(const ReprojectionState& s, std::span<const double> action,
                                    const Intrinsics& intr);

/// Keypoints uniform in a 4 x 4 x 2 m box centred 5 m in front of a camera
/// at the origin with identity orientation: x, y in [-2, 2], z in [-6, -4].
std::vector<Vec3> sample_keypoints(Rng& rng, std::size_t count);

/// Smoothed random camera actions: a_t = 0.8 a_{t-1} + 0.2 u_t, u_t uniform
/// in [-1, 1]^6, a_{-1} = 0.
std::vector<double> next_camera_action(Rng& rng, std::span<const double> previous);

}  // namespace wmbench::geometry
