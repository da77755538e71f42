#include "wmbench/predictors/predictor.hpp"

#include <cmath>

#include "wmbench/core/error.hpp"

namespace wmbench {

RolloutContext make_context(const Episode& e, std::size_t condition_steps,
                            std::optional<std::size_t> rollout_steps) {
  if (condition_steps < 1) throw InvalidArgument("condition_steps must be at least 1");
  if (e.steps() < condition_steps + 1) {
    throw InvalidArgument("episode " + e.episode_id + " has " + std::to_string(e.states.rows()) +
                          " states; need at least " + std::to_string(condition_steps + 2));
  }
  const std::size_t available = e.steps() - condition_steps;
  const std::size_t rollout = rollout_steps.value_or(available);
  if (rollout < 1 || rollout > available) {
    throw InvalidArgument("rollout of " + std::to_string(rollout) + " steps does not fit episode " + e.episode_id +
                          " (at most " + std::to_string(available) + " after " +
                          std::to_string(condition_steps) + " conditioning steps)");
  }
  RolloutContext ctx;
  ctx.task = e.task;
  ctx.params = e.params;
  ctx.layout = e.state_layout;
  ctx.conditioning = Matrix(0, e.states.cols());
  for (std::size_t t = 0; t < condition_steps; ++t) ctx.conditioning.append_row(e.states.row(t));
  ctx.actions = e.actions;
  ctx.rollout_steps = rollout;
  return ctx;
}

PredictionRecord predict(const Predictor& p, const Episode& e, std::size_t condition_steps,
                         std::optional<std::size_t> rollout_steps) {
  const RolloutContext ctx = make_context(e, condition_steps, rollout_steps);
  PredictionRecord record;
  record.episode_id = e.episode_id;
  record.predictor = p.name();
  record.condition_steps = condition_steps;
  record.states = p.rollout(ctx);
  if (record.states.rows() != ctx.rollout_steps || record.states.cols() != e.states.cols()) {
    throw ShapeMismatch(p.name() + " returned " + std::to_string(record.states.rows()) + "x" +
                        std::to_string(record.states.cols()) + ", expected " +
                        std::to_string(ctx.rollout_steps) + "x" + std::to_string(e.states.cols()));
  }
  for (std::size_t h = 0; h < record.states.rows(); ++h) {
    for (double v : record.states.row(h)) {
      if (!std::isfinite(v)) {
        throw NonFinite(p.name() + " produced a non-finite state at imagined step " + std::to_string(h + 1) +
                        " of episode " + e.episode_id);
      }
    }
  }
  return record;
}

Matrix autoregress(const RolloutContext& ctx, const StepModel& model) {
  const std::size_t c = ctx.condition_steps();
  Matrix out(0, ctx.conditioning.cols());
  const auto last = ctx.conditioning.row(c - 1);
  StateVector state(last.begin(), last.end());
  for (std::size_t h = 0; h < ctx.rollout_steps; ++h) {
    const std::size_t t = c - 1 + h;
    try {
      state = model(state, ctx.actions.row(t), t);
    } catch (const NonFinite& err) {
      throw NonFinite("imagined step " + std::to_string(h + 1) + ": " + err.what());
    }
    out.append_row(state);
  }
  return out;
}

}  // namespace wmbench
