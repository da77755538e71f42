#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wmbench/core/rng.hpp"
#include "wmbench/dynamics/integrator.hpp"
#include "wmbench/dynamics/state_layout.hpp"

namespace wmbench {

enum class TaskId {
  kFreeFall,
  kProjectile,
  kBouncingBall,
  kElasticCollision,
  kCircular,
  kInclinedPlane,
  kPendulum,
  kRolling,
  kRotation,
  kSpin,
  kReprojection,
};

std::string_view to_string(TaskId id);
/// Throws InvalidArgument for unknown names.
TaskId task_from_string(std::string_view name);
std::span<const TaskId> all_tasks();

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return v >= lo && (v < hi || (lo == hi && v == lo)); }
  bool operator==(const Range&) const = default;
};

/// Parameter name -> sampling interval. Iteration order (sorted by name) is
/// the order in which parameters are drawn.
using RangeMap = std::map<std::string, Range>;

/// Sampled physical parameters and initial-condition magnitudes.
using TaskParams = std::map<std::string, double>;

inline constexpr double kDefaultDt = 0.02;           // s
inline constexpr std::size_t kDefaultHorizon = 100;  // steps

struct TaskSpec {
  TaskId id = TaskId::kFreeFall;
  double dt = kDefaultDt;
  std::size_t horizon = kDefaultHorizon;
  RangeMap param_ranges;
  std::size_t action_dim = 0;
  std::vector<double> action_scale;

  /// Catalog defaults for a task.
  static TaskSpec defaults(TaskId id);

  /// Replaces one declared range. Throws InvalidArgument for a name the
  /// task does not declare and InvalidRange when lo > hi.
  void set_range(const std::string& name, Range range);

  /// Throws InvalidArgument / InvalidRange on violated invariants.
  void validate() const;

  bool operator==(const TaskSpec&) const = default;
};

StateLayout state_layout(TaskId id);
ActionLayout action_layout(TaskId id);

/// Extra per-episode metadata (intrinsics for reprojection, empty otherwise).
std::map<std::string, double> task_metadata(TaskId id, const TaskParams& params);

struct InitialCondition {
  TaskParams params;
  StateVector state;
};

/// Draws every parameter in sorted-name order, then the state components
/// that depend on them. Rejected draws (e.g. overlapping discs, friction
/// too high for the slope to accelerate) are redrawn from the same stream.
InitialCondition sample_init(const TaskSpec& spec, Rng& rng);

/// One transition of `dt`. Pure: equal inputs give bit-identical outputs.
/// Events (collisions) resolved during the step are appended to `log`.
StateVector step(const TaskSpec& spec, const TaskParams& params, std::span<const double> state,
                 std::span<const double> action, EventLog* log = nullptr);

/// Per-step random action for actuated tasks; `previous` is the previous
/// action (empty at t = 0).
std::vector<double> sample_action(const TaskSpec& spec, Rng& rng, std::span<const double> previous);

}  // namespace wmbench
