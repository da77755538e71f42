#include "wmbench/predictors/neural_derivative.hpp"

#include <cmath>
#include <numeric>

#include "wmbench/core/error.hpp"
#include "wmbench/predictors/adam.hpp"

namespace wmbench {

NeuralDerivativePredictor::NeuralDerivativePredictor(Mlp net, Normalizer input, Normalizer output,
                                                     std::vector<std::size_t> quaternion_offsets)
    : net_(std::move(net)),
      input_(std::move(input)),
      output_(std::move(output)),
      quat_offsets_(std::move(quaternion_offsets)) {
  if (net_.input_dim() < net_.output_dim() || input_.mean.size() != net_.input_dim() ||
      input_.scale.size() != net_.input_dim() || output_.mean.size() != net_.output_dim() ||
      output_.scale.size() != net_.output_dim()) {
    throw ShapeMismatch("normalization statistics do not match the network");
  }
  for (std::size_t o : quat_offsets_) {
    if (o + 4 > net_.output_dim()) throw ShapeMismatch("quaternion block outside the state");
  }
}

StateVector NeuralDerivativePredictor::derivative(std::span<const double> state,
                                                  std::span<const double> action) const {
  const std::size_t d = state_dim();
  if (state.size() != d || action.size() != action_dim()) {
    throw ShapeMismatch("neural model expects " + std::to_string(d) + " state and " +
                        std::to_string(action_dim()) + " action dims");
  }
  std::vector<double> x(d + action.size());
  std::copy(state.begin(), state.end(), x.begin());
  std::copy(action.begin(), action.end(), x.begin() + static_cast<std::ptrdiff_t>(d));
  input_.normalize(x, x);
  StateVector y(d);
  net_.forward(x, y);
  output_.denormalize(y, y);
  return y;
}

Matrix NeuralDerivativePredictor::rollout(const RolloutContext& ctx) const {
  const double dt = ctx.task.dt;
  return autoregress(ctx, [&](std::span<const double> s, std::span<const double> a, std::size_t) {
    const Derivative f = [&](std::span<const double> y, std::span<double> dy) {
      const StateVector v = derivative(y, a);
      std::copy(v.begin(), v.end(), dy.begin());
    };
    return rk4_step(f, s, dt, quat_offsets_);
  });
}

TrainResult fit_neural_derivative(std::span<const Episode> train, const TrainConfig& config) {
  if (train.empty()) throw InvalidArgument("fit_neural_derivative needs training episodes");
  if (config.epochs == 0 || config.batch == 0 || config.hidden == 0) {
    throw InvalidArgument("epochs, batch and hidden width must be positive");
  }
  const Episode& first = train.front();
  const std::size_t d = first.states.cols();
  const std::size_t a = first.actions.cols();
  const double dt = first.task.dt;

  Matrix inputs(0, d + a), targets(0, d);
  std::vector<double> x(d + a), y(d);
  for (const auto& e : train) {
    if (e.states.cols() != d || e.actions.cols() != a || e.task.dt != dt || e.task.id != first.task.id) {
      throw InvalidArgument("training episodes disagree on task, dt or dimensions");
    }
    for (std::size_t t = 0; t < e.steps(); ++t) {
      const auto s0 = e.states.row(t);
      const auto s1 = e.states.row(t + 1);
      const auto u = e.actions.row(t);
      std::copy(s0.begin(), s0.end(), x.begin());
      std::copy(u.begin(), u.end(), x.begin() + static_cast<std::ptrdiff_t>(d));
      for (std::size_t j = 0; j < d; ++j) y[j] = (s1[j] - s0[j]) / dt;
      inputs.append_row(x);
      targets.append_row(y);
    }
  }
  const std::size_t n = inputs.rows();
  if (n == 0) throw InvalidArgument("fit_neural_derivative needs at least one transition");

  const Normalizer in_stats = Normalizer::fit(inputs);
  const Normalizer out_stats = Normalizer::fit(targets);
  for (std::size_t r = 0; r < n; ++r) {
    in_stats.normalize(inputs.row(r), inputs.row(r));
    out_stats.normalize(targets.row(r), targets.row(r));
  }

  Rng rng(config.seed);
  Mlp net({d + a, config.hidden, config.hidden, d});
  net.init_xavier(rng);
  AdamState opt(net.parameters().size());
  opt.lr = config.lr;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> grad(net.parameters().size());
  std::vector<double> epoch_loss;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    double total = 0.0;
    for (std::size_t begin = 0; begin < n; begin += config.batch) {
      const std::size_t end = std::min(n, begin + config.batch);
      Matrix bx(0, d + a), by(0, d);
      for (std::size_t k = begin; k < end; ++k) {
        bx.append_row(inputs.row(order[k]));
        by.append_row(targets.row(order[k]));
      }
      double loss = 0.0;
      try {
        loss = net.loss(bx, by, grad);
      } catch (const NonFinite& err) {
        throw NonFinite("epoch " + std::to_string(epoch + 1) + ", batch starting at sample " +
                        std::to_string(begin) + ": " + err.what());
      }
      adam_step(opt, net.parameters(), grad);
      total += loss * static_cast<double>(end - begin);
    }
    epoch_loss.push_back(total / static_cast<double>(n));
  }

  TrainResult result{NeuralDerivativePredictor(std::move(net), in_stats, out_stats,
                                               first.state_layout.quaternion_offsets()),
                     std::move(epoch_loss)};
  return result;
}

}  // namespace wmbench
