#include <gtest/gtest.h>

#include <cmath>

#include "wmbench/core/error.hpp"
#include "wmbench/geometry/camera.hpp"
#include "wmbench/geometry/reprojection.hpp"

using namespace wmbench;
using namespace wmbench::geometry;

namespace {

const Intrinsics kIntr(320, 240, M_PI / 3);

CameraPose random_pose(Rng& rng) {
  const Quat q =
      Quat{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}.normalized();
  return {{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)}, q};
}

}  // namespace

TEST(Intrinsics, FocalFromFov) {
  const Intrinsics intr(100, 100, M_PI / 2);
  EXPECT_NEAR(intr.focal(), 50.0, 1e-12);
  EXPECT_EQ(intr.cx(), 50.0);
  EXPECT_THROW(Intrinsics(0, 10, 1.0), InvalidArgument);
  EXPECT_THROW(Intrinsics(10, 10, M_PI), InvalidArgument);
}

TEST(Project, OpticalAxisHitsPrincipalPoint) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const CameraPose pose = random_pose(rng);
    const double depth = rng.uniform(0.1, 50);
    const Vec3 p = pose.position + quat_rotate(pose.orientation, Vec3{0, 0, -depth});
    const Projection pr = project(pose, kIntr, p);
    EXPECT_TRUE(pr.visible);
    EXPECT_NEAR(pr.u, kIntr.cx(), 1e-9);
    EXPECT_NEAR(pr.v, kIntr.cy(), 1e-9);
  }
}

TEST(Project, PinholeFormula) {
  const Intrinsics intr(100, 100, M_PI / 2);
  const Projection pr = project(CameraPose{}, intr, {1, 0, -5});
  EXPECT_NEAR(pr.u, 60.0, 1e-12);
  EXPECT_NEAR(pr.v, 50.0, 1e-12);
  // y up in the camera means v decreases.
  EXPECT_LT(project(CameraPose{}, intr, {0, 1, -5}).v, 50.0);
}

TEST(Project, BehindCameraInvisible) {
  EXPECT_FALSE(project(CameraPose{}, kIntr, {0, 0, 5}).visible);
  EXPECT_FALSE(project(CameraPose{}, kIntr, {0, 0, -1e-4}).visible);
  EXPECT_FALSE(project(CameraPose{}, kIntr, {100, 0, -1}).visible);
}

TEST(Project, BackProjectRoundTrip) {
  Rng rng(2);
  int checked = 0;
  while (checked < 1000) {
    const CameraPose pose = random_pose(rng);
    const Vec3 p_cam{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-10, -0.5)};
    const Vec3 p = pose.position + quat_rotate(pose.orientation, p_cam);
    const Projection pr = project(pose, kIntr, p);
    if (!pr.visible) continue;
    const Vec3 back = back_project(pose, kIntr, pr.u, pr.v, -p_cam.z);
    ASSERT_LE(norm(back - p), 1e-9);
    ++checked;
  }
}

TEST(StepCamera, ZeroActionKeepsPose) {
  Rng rng(3);
  const CameraPose pose = random_pose(rng);
  EXPECT_EQ(step_camera(pose, std::vector<double>(6, 0.0)), pose);
}

TEST(StepCamera, TranslationInCameraFrame) {
  Rng rng(4);
  const CameraPose pose = random_pose(rng);
  const CameraPose moved = step_camera(pose, std::vector<double>{1, 0, 0, 0, 0, 0});
  const Vec3 expected = pose.position + quat_rotate(pose.orientation, Vec3{kMaxTranslationStep, 0, 0});
  EXPECT_NEAR(norm(moved.position - expected), 0.0, 1e-15);
  EXPECT_EQ(moved.orientation, pose.orientation);
}

TEST(StepCamera, TranslationInverse) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const CameraPose pose = random_pose(rng);
    const std::vector<double> a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), 0, 0, 0};
    const std::vector<double> neg{-a[0], -a[1], -a[2], 0, 0, 0};
    const CameraPose back = step_camera(step_camera(pose, a), neg);
    EXPECT_LE(norm(back.position - pose.position), 1e-12);
  }
}

TEST(StepCamera, YawRotatesAboutCameraY) {
  const CameraPose moved = step_camera(CameraPose{}, std::vector<double>{0, 0, 0, 1, 0, 0});
  EXPECT_NEAR(rotation_angle(moved.orientation), kMaxRotationStep, 1e-15);
  const Vec3 forward = quat_rotate(moved.orientation, Vec3{0, 0, -1});
  EXPECT_NEAR(forward.y, 0.0, 1e-15);
  EXPECT_NEAR(moved.orientation.norm(), 1.0, 1e-12);
}

TEST(StepCamera, RejectsOutOfRange) {
  EXPECT_THROW(step_camera(CameraPose{}, std::vector<double>{1.01, 0, 0, 0, 0, 0}), ActionOutOfRange);
  EXPECT_THROW(step_camera(CameraPose{}, std::vector<double>{0, 0, 0}), ActionOutOfRange);
}

TEST(Reprojection, ZeroActionKeepsPixels) {
  Rng rng(6);
  const auto world = sample_keypoints(rng, kDefaultKeypoints);
  const ReprojectionState s = observe(CameraPose{}, kIntr, world);
  EXPECT_EQ(step_reprojection(s, std::vector<double>(6, 0.0), kIntr), s);
}

TEST(Reprojection, RightwardMoveShiftsPixelsLeft) {
  Rng rng(7);
  for (int scene = 0; scene < 20; ++scene) {
    const auto world = sample_keypoints(rng, kDefaultKeypoints);
    const ReprojectionState s = observe(CameraPose{}, kIntr, world);
    const ReprojectionState next = step_reprojection(s, std::vector<double>{1, 0, 0, 0, 0, 0}, kIntr);
    for (std::size_t k = 0; k < world.size(); ++k) {
      if (s.keypoints[k].visible && next.keypoints[k].visible) {
        EXPECT_LT(next.keypoints[k].u, s.keypoints[k].u);
      }
    }
  }
}

TEST(Reprojection, InvisibleKeepsLastPixel) {
  const std::vector<Vec3> world{{0.5, 0, -5}};
  const ReprojectionState s = observe(CameraPose{}, kIntr, world);
  ASSERT_TRUE(s.keypoints[0].visible);
  const CameraPose turned{{0, 0, 0}, Quat::from_axis_angle({0, 1, 0}, M_PI)};
  const ReprojectionState hidden = observe(turned, kIntr, world, &s);
  EXPECT_FALSE(hidden.keypoints[0].visible);
  EXPECT_EQ(hidden.keypoints[0].u, s.keypoints[0].u);
  EXPECT_EQ(hidden.keypoints[0].v, s.keypoints[0].v);
}

TEST(Reprojection, VisiblePixelsAreNormalized) {
  Rng rng(8);
  ReprojectionState s = observe(CameraPose{}, kIntr, sample_keypoints(rng, kDefaultKeypoints));
  std::vector<double> action(6, 0.0);
  for (int t = 0; t < 200; ++t) {
    action = next_camera_action(rng, action);
    s = step_reprojection(s, action, kIntr);
    for (const auto& k : s.keypoints) {
      if (!k.visible) continue;
      ASSERT_LE(std::abs(k.u), 1.0);
      ASSERT_LE(std::abs(k.v), 1.0);
    }
  }
}

TEST(Reprojection, EncodeDecodeRoundTrip) {
  Rng rng(9);
  const ReprojectionState s = observe(CameraPose{}, kIntr, sample_keypoints(rng, 5));
  const StateVector v = encode(s);
  EXPECT_EQ(v.size(), kCameraDims + 5 * kDimsPerKeypoint);
  EXPECT_EQ(decode(v), s);
  EXPECT_EQ(reprojection_layout(5).size(), v.size());
  EXPECT_THROW(decode(std::span(v).first(v.size() - 1)), ShapeMismatch);
}

TEST(Reprojection, ActionMomentum) {
  Rng a(10), b(10);
  const std::vector<double> prev{0.5, -0.5, 0, 0, 1, -1};
  const auto next = next_camera_action(a, prev);
  for (std::size_t i = 0; i < 6; ++i) {
    const double u = b.uniform(-1, 1);
    EXPECT_DOUBLE_EQ(next[i], std::clamp(0.8 * prev[i] + 0.2 * u, -1.0, 1.0));
  }
}
