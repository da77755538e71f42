#include <array>
#include <cmath>
#include <string>

#include "wmbench/core/error.hpp"
#include "wmbench/geometry/reprojection.hpp"
#include "wmbench/tasks/task.hpp"
#include "wmbench/tasks/transitions.hpp"

namespace wmbench {
namespace {

constexpr double kDeg = M_PI / 180.0;
constexpr double kGravity = 9.81;
constexpr double kBoxSide = 2.0;
constexpr double kCircularForceScale = 1.0;  // N per unit action
constexpr int kMaxRejections = 10000;

constexpr std::array<std::pair<TaskId, std::string_view>, 11> kTaskNames{{
    {TaskId::kFreeFall, "free_fall"},
    {TaskId::kProjectile, "projectile"},
    {TaskId::kBouncingBall, "bouncing_ball"},
    {TaskId::kElasticCollision, "elastic_collision"},
    {TaskId::kCircular, "circular"},
    {TaskId::kInclinedPlane, "inclined_plane"},
    {TaskId::kPendulum, "pendulum"},
    {TaskId::kRolling, "rolling"},
    {TaskId::kRotation, "rotation"},
    {TaskId::kSpin, "spin"},
    {TaskId::kReprojection, "reprojection"},
}};

constexpr std::array<TaskId, 11> kAllTasks{
    TaskId::kFreeFall,      TaskId::kProjectile, TaskId::kBouncingBall, TaskId::kElasticCollision,
    TaskId::kCircular,      TaskId::kInclinedPlane, TaskId::kPendulum, TaskId::kRolling,
    TaskId::kRotation,      TaskId::kSpin,       TaskId::kReprojection};

const Range kFixedGravity{kGravity, kGravity};
const Range kRadius{0.05, 0.2};
const Range kMass{0.5, 2.0};
const Range kSpeed{0.5, 3.0};
const Range kTurn{0.0, 2.0 * M_PI};

RangeMap default_ranges(TaskId id) {
  switch (id) {
    case TaskId::kFreeFall:
      return {{"g", kFixedGravity}, {"height", {0.5, 2.0}}, {"radius", kRadius}};
    case TaskId::kProjectile:
      return {{"g", kFixedGravity}, {"height", {0.5, 2.0}}, {"radius", kRadius}, {"speed", kSpeed}};
    case TaskId::kBouncingBall:
      return {{"box", {kBoxSide, kBoxSide}}, {"heading", kTurn}, {"radius", kRadius}, {"speed", kSpeed}};
    case TaskId::kElasticCollision:
      return {{"box", {kBoxSide, kBoxSide}},
              {"heading_1", kTurn},
              {"heading_2", kTurn},
              {"mass_1", kMass},
              {"mass_2", kMass},
              {"radius", kRadius},
              {"speed_1", kSpeed},
              {"speed_2", kSpeed}};
    case TaskId::kCircular:
      return {{"length", {0.5, 1.5}}, {"mass", kMass}, {"phase", kTurn}, {"speed", kSpeed}};
    case TaskId::kInclinedPlane:
      return {{"angle", {15.0 * kDeg, 45.0 * kDeg}},
              {"friction", {0.0, 0.3}},
              {"g", kFixedGravity},
              {"speed", kSpeed}};
    case TaskId::kPendulum:
      return {{"amplitude", {0.1, 2.5}}, {"g", kFixedGravity}, {"length", {0.5, 1.5}}};
    case TaskId::kRolling:
      return {{"mass", kMass}, {"radius", kRadius}, {"speed", kSpeed}};
    case TaskId::kRotation:
      return {{"angular_speed", kSpeed}};
    case TaskId::kSpin:
      return {{"damping", {0.001, 0.01}},
              {"g", kFixedGravity},
              {"height", {0.05, 0.2}},
              {"mass", kMass},
              {"radius", kRadius},
              {"spin_rate", {20.0, 60.0}},
              {"tilt", {0.02, 0.1}},
              {"tilt_azimuth", kTurn}};
    case TaskId::kReprojection:
      return {{"fov_y", {60.0 * kDeg, 60.0 * kDeg}},
              {"image_height", {240.0, 240.0}},
              {"image_width", {320.0, 320.0}}};
  }
  throw InvalidArgument("unknown task id");
}

TaskParams draw_params(const RangeMap& ranges, Rng& rng) {
  TaskParams params;
  for (const auto& [name, range] : ranges) params[name] = rng.uniform(range.lo, range.hi);
  return params;
}

geometry::Intrinsics intrinsics_of(const TaskParams& p) {
  return geometry::Intrinsics(static_cast<int>(p.at("image_width")), static_cast<int>(p.at("image_height")),
                              p.at("fov_y"));
}

// Uniform random rotation from three uniforms (Shoemake).
Quat random_orientation(Rng& rng) {
  const double u1 = rng.uniform(0.0, 1.0);
  const double u2 = rng.uniform(0.0, 2.0 * M_PI);
  const double u3 = rng.uniform(0.0, 2.0 * M_PI);
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  return Quat{a * std::sin(u2), a * std::cos(u2), b * std::sin(u3), b * std::cos(u3)}.normalized();
}

// Draws the parameters and any state components that depend on them; returns
// false when the draw must be rejected.
bool try_sample(const TaskSpec& spec, Rng& rng, InitialCondition& out) {
  out.params = draw_params(spec.param_ranges, rng);
  const TaskParams& p = out.params;
  auto& s = out.state;
  switch (spec.id) {
    case TaskId::kFreeFall:
      if (p.at("height") < p.at("radius")) return false;
      s = {0.0, 0.0, p.at("height"), 0.0, 0.0, 0.0};
      return true;
    case TaskId::kProjectile:
      if (p.at("height") < p.at("radius")) return false;
      s = {0.0, 0.0, p.at("height"), p.at("speed"), 0.0, 0.0};
      return true;
    case TaskId::kBouncingBall: {
      const double r = p.at("radius");
      const double box = p.at("box");
      if (box <= 2.0 * r) return false;
      const double x = rng.uniform(r, box - r);
      const double y = rng.uniform(r, box - r);
      const double heading = p.at("heading");
      s = {x, y, p.at("speed") * std::cos(heading), p.at("speed") * std::sin(heading)};
      return true;
    }
    case TaskId::kElasticCollision: {
      const double r = p.at("radius");
      const double box = p.at("box");
      if (box <= 4.0 * r) return false;
      const double x1 = rng.uniform(r, box - r);
      const double y1 = rng.uniform(r, box - r);
      const double x2 = rng.uniform(r, box - r);
      const double y2 = rng.uniform(r, box - r);
      if (std::hypot(x2 - x1, y2 - y1) <= 2.0 * r) return false;
      const double h1 = p.at("heading_1");
      const double h2 = p.at("heading_2");
      s = {x1, y1, p.at("speed_1") * std::cos(h1), p.at("speed_1") * std::sin(h1),
           x2, y2, p.at("speed_2") * std::cos(h2), p.at("speed_2") * std::sin(h2)};
      return true;
    }
    case TaskId::kCircular: {
      const double radius = p.at("length");
      const double theta = p.at("phase");
      const double omega = p.at("speed") / radius;
      s = {radius * std::cos(theta), radius * std::sin(theta), -radius * omega * std::sin(theta),
           radius * omega * std::cos(theta)};
      return true;
    }
    case TaskId::kInclinedPlane:
      if (!(tasks::inclined_acceleration(p) > 0.0)) return false;
      s = {0.0, p.at("speed")};
      return true;
    case TaskId::kPendulum:
      s = {p.at("amplitude"), 0.0};
      return true;
    case TaskId::kRolling: {
      const double omega = p.at("speed") / p.at("radius");
      // v is recomputed from omega so that v == omega * r holds bit-exactly.
      s = {0.0, omega * p.at("radius"), 0.0, omega};
      return true;
    }
    case TaskId::kRotation: {
      const Quat q = random_orientation(rng);
      s = {q.w, q.x, q.y, q.z, 0.0, 0.0, p.at("angular_speed")};
      return true;
    }
    case TaskId::kSpin: {
      const double az = p.at("tilt_azimuth");
      const Quat q = Quat::from_axis_angle({-std::sin(az), std::cos(az), 0.0}, p.at("tilt"));
      s = {q.w, q.x, q.y, q.z, 0.0, 0.0, p.at("spin_rate")};
      return true;
    }
    case TaskId::kReprojection: {
      const auto intr = intrinsics_of(p);
      const auto world = geometry::sample_keypoints(rng, geometry::kDefaultKeypoints);
      s = geometry::encode(geometry::observe(geometry::CameraPose{}, intr, world));
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(TaskId id) {
  for (const auto& [t, name] : kTaskNames)
    if (t == id) return name;
  return "unknown";
}

TaskId task_from_string(std::string_view name) {
  for (const auto& [t, n] : kTaskNames)
    if (n == name) return t;
  throw InvalidArgument("unknown task '" + std::string(name) + "'");
}

std::span<const TaskId> all_tasks() { return kAllTasks; }

TaskSpec TaskSpec::defaults(TaskId id) {
  TaskSpec spec;
  spec.id = id;
  spec.param_ranges = default_ranges(id);
  for (const auto& a : action_layout(id)) spec.action_scale.push_back(a.scale);
  spec.action_dim = spec.action_scale.size();
  return spec;
}

void TaskSpec::set_range(const std::string& name, Range range) {
  auto it = param_ranges.find(name);
  if (it == param_ranges.end()) {
    throw InvalidArgument("task " + std::string(to_string(id)) + " has no parameter '" + name + "'");
  }
  if (!(range.lo <= range.hi)) {
    throw InvalidRange(name + " = [" + std::to_string(range.lo) + ", " + std::to_string(range.hi) + "]");
  }
  it->second = range;
}

void TaskSpec::validate() const {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (horizon < 1) throw InvalidArgument("horizon must be at least 1");
  if (action_dim != action_layout(id).size() || action_scale.size() != action_dim) {
    throw InvalidArgument("action dimension does not match the " + std::string(to_string(id)) + " catalog");
  }
  const RangeMap expected = default_ranges(id);
  for (const auto& [name, range] : param_ranges) {
    if (!expected.contains(name)) {
      throw InvalidArgument("task " + std::string(to_string(id)) + " has no parameter '" + name + "'");
    }
    if (!(range.lo <= range.hi) || !std::isfinite(range.lo) || !std::isfinite(range.hi)) {
      throw InvalidRange(name + " = [" + std::to_string(range.lo) + ", " + std::to_string(range.hi) + "]");
    }
  }
  for (const auto& [name, range] : expected) {
    if (!param_ranges.contains(name)) throw InvalidArgument("missing parameter range '" + name + "'");
  }
  for (const char* positive : {"g", "mass", "mass_1", "mass_2", "radius", "length", "box", "height"}) {
    const auto it = param_ranges.find(positive);
    if (it != param_ranges.end() && !(it->second.lo > 0.0)) {
      throw InvalidRange(std::string(positive) + " must be positive");
    }
  }
}

StateLayout state_layout(TaskId id) {
  using R = DimRole;
  switch (id) {
    case TaskId::kFreeFall:
    case TaskId::kProjectile:
      return {{{"px", "m", R::kPosition, "vx", ""},
               {"py", "m", R::kPosition, "vy", ""},
               {"pz", "m", R::kPosition, "vz", ""},
               {"vx", "m/s", R::kVelocity, "", ""},
               {"vy", "m/s", R::kVelocity, "", ""},
               {"vz", "m/s", R::kVelocity, "", ""}},
              {}};
    case TaskId::kBouncingBall:
    case TaskId::kCircular:
      return {{{"px", "m", R::kPosition, "vx", ""},
               {"py", "m", R::kPosition, "vy", ""},
               {"vx", "m/s", R::kVelocity, "", ""},
               {"vy", "m/s", R::kVelocity, "", ""}},
              {}};
    case TaskId::kElasticCollision:
      return {{{"p1x", "m", R::kPosition, "v1x", ""},
               {"p1y", "m", R::kPosition, "v1y", ""},
               {"v1x", "m/s", R::kVelocity, "", ""},
               {"v1y", "m/s", R::kVelocity, "", ""},
               {"p2x", "m", R::kPosition, "v2x", ""},
               {"p2y", "m", R::kPosition, "v2y", ""},
               {"v2x", "m/s", R::kVelocity, "", ""},
               {"v2y", "m/s", R::kVelocity, "", ""}},
              {}};
    case TaskId::kInclinedPlane:
      return {{{"s_along", "m", R::kPosition, "v_along", ""}, {"v_along", "m/s", R::kVelocity, "", ""}},
              {}};
    case TaskId::kPendulum:
      return {{{"theta", "rad", R::kAngle, "omega", ""}, {"omega", "rad/s", R::kAngularVelocity, "", ""}},
              {}};
    case TaskId::kRolling:
      return {{{"x", "m", R::kPosition, "v", ""},
               {"v", "m/s", R::kVelocity, "", ""},
               {"phi", "rad", R::kAngle, "omega", ""},
               {"omega", "rad/s", R::kAngularVelocity, "", ""}},
              {}};
    case TaskId::kRotation:
    case TaskId::kSpin:
      return {{{"qw", "1", R::kQuaternion, "", ""},
               {"qx", "1", R::kQuaternion, "", ""},
               {"qy", "1", R::kQuaternion, "", ""},
               {"qz", "1", R::kQuaternion, "", ""},
               {"wx", "rad/s", R::kAngularVelocity, "", ""},
               {"wy", "rad/s", R::kAngularVelocity, "", ""},
               {"wz", "rad/s", R::kAngularVelocity, "", ""}},
              {{0, 4}}};
    case TaskId::kReprojection:
      return geometry::reprojection_layout(geometry::kDefaultKeypoints);
  }
  throw InvalidArgument("unknown task id");
}

ActionLayout action_layout(TaskId id) {
  if (id == TaskId::kCircular) return {{"tangential_force", "N", kCircularForceScale}};
  if (id == TaskId::kReprojection) return geometry::camera_action_layout();
  return {};
}

std::map<std::string, double> task_metadata(TaskId id, const TaskParams& params) {
  if (id != TaskId::kReprojection) return {};
  const auto intr = intrinsics_of(params);
  return {{"width", intr.width()},  {"height", intr.height()}, {"fov_y", intr.fov_y()},
          {"focal", intr.focal()},  {"cx", intr.cx()},         {"cy", intr.cy()},
          {"keypoints", static_cast<double>(geometry::kDefaultKeypoints)}};
}

InitialCondition sample_init(const TaskSpec& spec, Rng& rng) {
  spec.validate();
  InitialCondition out;
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    if (try_sample(spec, rng, out)) return out;
  }
  throw InvalidRange("no valid initial condition for " + std::string(to_string(spec.id)) + " after " +
                     std::to_string(kMaxRejections) + " draws; check the parameter ranges");
}

StateVector step(const TaskSpec& spec, const TaskParams& params, std::span<const double> state,
                 std::span<const double> action, EventLog* log) {
  if (action.size() != spec.action_dim) {
    throw ShapeMismatch(std::string(to_string(spec.id)) + " expects " + std::to_string(spec.action_dim) +
                        " action components, got " + std::to_string(action.size()));
  }
  for (double a : action) {
    if (!(a >= -1.0 && a <= 1.0)) throw ActionOutOfRange("action component " + std::to_string(a));
  }
  const double dt = spec.dt;
  switch (spec.id) {
    case TaskId::kFreeFall: return tasks::step_free_fall(state, params, dt, log);
    case TaskId::kProjectile: return tasks::step_projectile(state, params, dt, log);
    case TaskId::kBouncingBall: return tasks::step_bouncing_ball(state, params, dt, log);
    case TaskId::kElasticCollision: return tasks::step_elastic_collision(state, params, dt, log);
    case TaskId::kCircular:
      return tasks::step_circular(state, action[0], params, dt, spec.action_scale[0]);
    case TaskId::kInclinedPlane: return tasks::step_inclined(state, params, dt);
    case TaskId::kPendulum: return tasks::step_pendulum(state, params, dt);
    case TaskId::kRolling: return tasks::step_rolling(state, params, dt);
    case TaskId::kRotation: return tasks::step_rotation(state, params, dt);
    case TaskId::kSpin: return tasks::step_spin(state, params, dt);
    case TaskId::kReprojection: {
      const auto next = geometry::step_reprojection(geometry::decode(state), action, intrinsics_of(params));
      return geometry::encode(next);
    }
  }
  throw InvalidArgument("unknown task id");
}

std::vector<double> sample_action(const TaskSpec& spec, Rng& rng, std::span<const double> previous) {
  if (spec.id == TaskId::kReprojection) return geometry::next_camera_action(rng, previous);
  std::vector<double> a(spec.action_dim);
  for (double& v : a) v = rng.uniform(-1.0, 1.0);
  return a;
}

}  // namespace wmbench
