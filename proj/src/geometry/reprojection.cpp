#include "wmbench/geometry/reprojection.hpp"

#include <algorithm>
#include <string>

#include "wmbench/core/error.hpp"

namespace wmbench::geometry {

StateLayout reprojection_layout(std::size_t keypoints) {
  StateLayout layout;
  for (const char* axis : {"x", "y", "z"}) {
    layout.dims.push_back({std::string("cam_") + axis, "m", DimRole::kPosition, "", ""});
  }
  for (const char* c : {"qw", "qx", "qy", "qz"}) {
    layout.dims.push_back({std::string("cam_") + c, "1", DimRole::kQuaternion, "", ""});
  }
  layout.quaternion_blocks.push_back({3, std::nullopt});
  for (std::size_t k = 0; k < keypoints; ++k) {
    const std::string p = "kp" + std::to_string(k) + "_";
    const std::string vis = p + "visible";
    layout.dims.push_back({p + "x", "m", DimRole::kWorldPoint, "", ""});
    layout.dims.push_back({p + "y", "m", DimRole::kWorldPoint, "", ""});
    layout.dims.push_back({p + "z", "m", DimRole::kWorldPoint, "", ""});
    layout.dims.push_back({p + "u", "1", DimRole::kPixel, "", vis});
    layout.dims.push_back({p + "v", "1", DimRole::kPixel, "", vis});
    layout.dims.push_back({vis, "1", DimRole::kVisibility, "", ""});
  }
  return layout;
}

ActionLayout camera_action_layout() {
  return {{"move_x", "m", kMaxTranslationStep},   {"move_y", "m", kMaxTranslationStep},
          {"move_z", "m", kMaxTranslationStep},   {"yaw", "rad", kMaxRotationStep},
          {"pitch", "rad", kMaxRotationStep},     {"roll", "rad", kMaxRotationStep}};
}

StateVector encode(const ReprojectionState& s) {
  StateVector out;
  out.reserve(kCameraDims + kDimsPerKeypoint * s.keypoints.size());
  const auto& c = s.camera;
  out.insert(out.end(), {c.position.x, c.position.y, c.position.z, c.orientation.w, c.orientation.x,
                         c.orientation.y, c.orientation.z});
  for (const auto& k : s.keypoints) {
    out.insert(out.end(), {k.world.x, k.world.y, k.world.z, k.u, k.v, k.visible ? 1.0 : 0.0});
  }
  return out;
}

ReprojectionState decode(std::span<const double> values) {
  if (values.size() < kCameraDims || (values.size() - kCameraDims) % kDimsPerKeypoint != 0) {
    throw ShapeMismatch("reprojection state of size " + std::to_string(values.size()));
  }
  ReprojectionState s;
  s.camera.position = {values[0], values[1], values[2]};
  s.camera.orientation = {values[3], values[4], values[5], values[6]};
  for (std::size_t off = kCameraDims; off < values.size(); off += kDimsPerKeypoint) {
    s.keypoints.push_back({{values[off], values[off + 1], values[off + 2]},
                           values[off + 3],
                           values[off + 4],
                           values[off + 5] != 0.0});
  }
  return s;
}

ReprojectionState observe(const CameraPose& camera, const Intrinsics& intr,
                          std::span<const Vec3> world, const ReprojectionState* previous) {
  ReprojectionState s;
  s.camera = camera;
  s.keypoints.reserve(world.size());
  for (std::size_t k = 0; k < world.size(); ++k) {
    const Projection p = project(camera, intr, world[k]);
    Keypoint kp{world[k], 0.0, 0.0, p.visible};
    if (p.visible) {
      kp.u = intr.normalize_u(p.u);
      kp.v = intr.normalize_v(p.v);
    } else if (previous) {
      kp.u = previous->keypoints[k].u;
      kp.v = previous->keypoints[k].v;
    }
    s.keypoints.push_back(kp);
  }
  return s;
}

ReprojectionState step_reprojection(const ReprojectionState& s, std::span<const double> action,
                                    const Intrinsics& intr) {
  const CameraPose camera = step_camera(s.camera, action);
  std::vector<Vec3> world;
  world.reserve(s.keypoints.size());
  for (const auto& k : s.keypoints) world.push_back(k.world);
  return observe(camera, intr, world, &s);
}

std::vector<Vec3> sample_keypoints(Rng& rng, std::size_t count) {
  std::vector<Vec3> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double x = rng.uniform(-2.0, 2.0);
    const double y = rng.uniform(-2.0, 2.0);
    const double z = rng.uniform(-6.0, -4.0);
    out.push_back({x, y, z});
  }
  return out;
}

std::vector<double> next_camera_action(Rng& rng, std::span<const double> previous) {
  std::vector<double> a(6);
  for (std::size_t i = 0; i < 6; ++i) {
    const double prev = previous.empty() ? 0.0 : previous[i];
    a[i] = std::clamp(kActionMomentum * prev + (1.0 - kActionMomentum) * rng.uniform(-1.0, 1.0), -1.0, 1.0);
  }
  return a;
}

}  // namespace wmbench::geometry
