#pragma once

#include <span>
#include <vector>

#include "wmbench/predictors/predictor.hpp"

namespace wmbench {

inline constexpr double kDefaultRidge = 1e-6;

/// s[t+1] = A^T [s[t]; a[t]] + b, fitted by ridge regression.
class LinearPredictor final : public Predictor {
 public:
  LinearPredictor(Matrix weights, std::vector<double> bias);

  std::string name() const override { return "linear"; }
  Matrix rollout(const RolloutContext& ctx) const override;

  /// (D + A) x D; row f holds the contribution of input feature f.
  const Matrix& weights() const noexcept { return weights_; }
  const std::vector<double>& bias() const noexcept { return bias_; }
  std::size_t state_dim() const noexcept { return bias_.size(); }
  std::size_t action_dim() const noexcept { return weights_.rows() - bias_.size(); }

  StateVector next(std::span<const double> state, std::span<const double> action) const;

 private:
  Matrix weights_;
  std::vector<double> bias_;
};

/// Ridge least squares on every transition of `train`. The features are
/// centered, so the intercept is not shrunk: a huge `ridge` collapses the
/// model to the mean next state. Throws InvalidArgument when there are no
/// transitions or the episodes disagree on shape; NotSPD propagates.
LinearPredictor fit_linear(std::span<const Episode> train, double ridge = kDefaultRidge);

}  // namespace wmbench
