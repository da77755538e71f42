#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "wmbench/core/matrix.hpp"
#include "wmbench/episodes/episode.hpp"

namespace wmbench {

inline constexpr std::size_t kDefaultConditionSteps = 10;

/// Everything a predictor may see for one episode: the task description,
/// the ground-truth conditioning window and the full recorded action
/// sequence. Ground-truth states after the window are never copied in.
struct RolloutContext {
  TaskSpec task;
  TaskParams params;
  StateLayout layout;
  Matrix conditioning;  // condition_steps x D
  Matrix actions;       // T x A
  std::size_t rollout_steps = 0;

  std::size_t condition_steps() const { return conditioning.rows(); }
};

/// A world model evaluated by imagination: given the conditioning window,
/// emit rollout_steps states, each fed back as the next input.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual std::string name() const = 0;
  /// Returns a rollout_steps x D grid of imagined states s[c], ..., s[T-1].
  virtual Matrix rollout(const RolloutContext& ctx) const = 0;
};

/// Builds the truncated view of an episode. The rollout covers
/// s[c], ..., s[c + rollout_steps - 1]; by default every remaining step up
/// to s[T - 1]. Throws InvalidArgument when the episode is too short.
RolloutContext make_context(const Episode& e, std::size_t condition_steps,
                            std::optional<std::size_t> rollout_steps = std::nullopt);

/// Runs `p` on `e` and packages the result. Throws NonFinite naming the
/// first non-finite imagined step, ShapeMismatch on a wrong-shaped rollout.
PredictionRecord predict(const Predictor& p, const Episode& e,
                         std::size_t condition_steps = kDefaultConditionSteps,
                         std::optional<std::size_t> rollout_steps = std::nullopt);

/// One-step model used by autoregressive predictors: (state, action, t) ->
/// next state, where t is the index of the action being applied.
using StepModel = std::function<StateVector(std::span<const double>, std::span<const double>, std::size_t)>;

/// Feeds the last conditioning state through `model` rollout_steps times
/// using the recorded actions a[c-1], a[c], ...
Matrix autoregress(const RolloutContext& ctx, const StepModel& model);

}  // namespace wmbench
