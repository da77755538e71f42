#include "wmbench/predictors/linear.hpp"

#include "wmbench/core/error.hpp"

namespace wmbench {

LinearPredictor::LinearPredictor(Matrix weights, std::vector<double> bias)
    : weights_(std::move(weights)), bias_(std::move(bias)) {
  if (weights_.cols() != bias_.size() || weights_.rows() < bias_.size()) {
    throw ShapeMismatch("linear weights " + std::to_string(weights_.rows()) + "x" +
                        std::to_string(weights_.cols()) + " do not match bias of size " +
                        std::to_string(bias_.size()));
  }
}

StateVector LinearPredictor::next(std::span<const double> state, std::span<const double> action) const {
  const std::size_t d = state_dim();
  if (state.size() != d || action.size() != action_dim()) {
    throw ShapeMismatch("linear model expects " + std::to_string(d) + " state and " +
                        std::to_string(action_dim()) + " action dims");
  }
  StateVector out(bias_);
  for (std::size_t f = 0; f < weights_.rows(); ++f) {
    const double x = f < d ? state[f] : action[f - d];
    const auto w = weights_.row(f);
    for (std::size_t j = 0; j < d; ++j) out[j] += x * w[j];
  }
  return out;
}

Matrix LinearPredictor::rollout(const RolloutContext& ctx) const {
  return autoregress(ctx, [this](std::span<const double> s, std::span<const double> a, std::size_t) {
    return next(s, a);
  });
}

namespace {

// Visits every (input, target) transition in episode order.
template <class F>
void for_each_transition(std::span<const Episode> train, std::size_t d, std::size_t a, F&& f) {
  std::vector<double> x(d + a);
  for (const auto& e : train) {
    for (std::size_t t = 0; t < e.steps(); ++t) {
      const auto s = e.states.row(t);
      const auto u = e.actions.row(t);
      std::copy(s.begin(), s.end(), x.begin());
      std::copy(u.begin(), u.end(), x.begin() + static_cast<std::ptrdiff_t>(d));
      f(std::span<const double>(x), e.states.row(t + 1));
    }
  }
}

}  // namespace

LinearPredictor fit_linear(std::span<const Episode> train, double ridge) {
  if (!(ridge >= 0.0)) throw InvalidArgument("ridge must be non-negative");
  if (train.empty()) throw InvalidArgument("fit_linear needs at least one transition");
  const std::size_t d = train.front().states.cols();
  const std::size_t a = train.front().actions.cols();
  std::size_t n = 0;
  for (const auto& e : train) {
    if (e.states.cols() != d || e.actions.cols() != a) {
      throw InvalidArgument("training episodes disagree on state/action dimensions");
    }
    n += e.steps();
  }
  if (n == 0) throw InvalidArgument("fit_linear needs at least one transition");
  const std::size_t f = d + a;

  std::vector<double> x_mean(f, 0.0), y_mean(d, 0.0);
  for_each_transition(train, d, a, [&](std::span<const double> x, std::span<const double> y) {
    for (std::size_t i = 0; i < f; ++i) x_mean[i] += x[i];
    for (std::size_t j = 0; j < d; ++j) y_mean[j] += y[j];
  });
  for (auto& v : x_mean) v /= static_cast<double>(n);
  for (auto& v : y_mean) v /= static_cast<double>(n);

  Matrix gram(f, f), cross(f, d);
  std::vector<double> xc(f), yc(d);
  for_each_transition(train, d, a, [&](std::span<const double> x, std::span<const double> y) {
    for (std::size_t i = 0; i < f; ++i) xc[i] = x[i] - x_mean[i];
    for (std::size_t j = 0; j < d; ++j) yc[j] = y[j] - y_mean[j];
    for (std::size_t i = 0; i < f; ++i) {
      const double xi = xc[i];
      if (xi == 0.0) continue;
      auto g = gram.row(i);
      for (std::size_t k = 0; k < f; ++k) g[k] += xi * xc[k];
      auto c = cross.row(i);
      for (std::size_t j = 0; j < d; ++j) c[j] += xi * yc[j];
    }
  });
  for (std::size_t i = 0; i < f; ++i) gram(i, i) += ridge;

  Matrix w = solve_spd(gram, cross);
  std::vector<double> bias(y_mean);
  for (std::size_t i = 0; i < f; ++i) {
    for (std::size_t j = 0; j < d; ++j) bias[j] -= w(i, j) * x_mean[i];
  }
  return LinearPredictor(std::move(w), std::move(bias));
}

}  // namespace wmbench
