#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wmbench/predictors/mlp.hpp"
#include "wmbench/predictors/predictor.hpp"

namespace wmbench {

inline constexpr std::size_t kHiddenWidth = 64;
inline constexpr std::size_t kDefaultBatch = 256;

/// Learned vector field ds/dt = f(s, a), integrated with RK4 at the task dt.
class NeuralDerivativePredictor final : public Predictor {
 public:
  NeuralDerivativePredictor(Mlp net, Normalizer input, Normalizer output,
                            std::vector<std::size_t> quaternion_offsets);

  std::string name() const override { return "neural"; }
  Matrix rollout(const RolloutContext& ctx) const override;

  /// Denormalized network output at (s, a).
  StateVector derivative(std::span<const double> state, std::span<const double> action) const;

  const Mlp& net() const noexcept { return net_; }
  const Normalizer& input_stats() const noexcept { return input_; }
  const Normalizer& output_stats() const noexcept { return output_; }
  const std::vector<std::size_t>& quaternion_offsets() const noexcept { return quat_offsets_; }
  std::size_t state_dim() const noexcept { return net_.output_dim(); }
  std::size_t action_dim() const noexcept { return net_.input_dim() - net_.output_dim(); }

 private:
  Mlp net_;
  Normalizer input_;
  Normalizer output_;
  std::vector<std::size_t> quat_offsets_;
};

struct TrainConfig {
  std::size_t epochs = 50;
  std::size_t batch = kDefaultBatch;
  std::uint64_t seed = 0;
  double lr = 1e-3;
  std::size_t hidden = kHiddenWidth;
};

struct TrainResult {
  NeuralDerivativePredictor model;
  std::vector<double> epoch_loss;  // sample-weighted mean normalized loss per epoch
  double final_loss() const { return epoch_loss.empty() ? 0.0 : epoch_loss.back(); }
};

/// Fits D+A -> hidden -> hidden -> D on finite-difference derivatives
/// (s[t+1] - s[t]) / dt with z-scored inputs and targets. Weights come from
/// Rng(seed); each epoch visits the data in a fresh seeded permutation.
/// Throws InvalidArgument on empty or inconsistent data, NonFinite when a
/// gradient blows up.
TrainResult fit_neural_derivative(std::span<const Episode> train, const TrainConfig& config = {});

}  // namespace wmbench
