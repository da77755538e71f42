#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wmbench/core/matrix.hpp"
#include "wmbench/core/rng.hpp"

namespace wmbench {

/// Fully connected tanh network with a linear output layer. Parameters
/// live in one flat vector: for each layer, W (out x in, row-major) then b.
class Mlp {
 public:
  /// All parameters zero. Needs at least an input and an output size.
  explicit Mlp(std::vector<std::size_t> sizes);

  /// Xavier-uniform weights, zero biases.
  void init_xavier(Rng& rng);

  const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
  std::size_t input_dim() const noexcept { return sizes_.front(); }
  std::size_t output_dim() const noexcept { return sizes_.back(); }
  std::size_t layer_count() const noexcept { return sizes_.size() - 1; }

  std::span<double> parameters() noexcept { return params_; }
  std::span<const double> parameters() const noexcept { return params_; }
  /// [begin, end) of layer l inside parameters().
  std::pair<std::size_t, std::size_t> layer_span(std::size_t l) const;

  void forward(std::span<const double> input, std::span<double> output) const;
  Matrix forward(const Matrix& inputs) const;

  /// Mean over the batch and outputs of (f(x) - y)^2. When `grad` is
  /// non-empty it receives d loss / d parameters.
  double loss(const Matrix& x, const Matrix& y, std::span<double> grad = {}) const;

 private:
  std::size_t weight_offset(std::size_t l) const { return offsets_[l]; }
  std::size_t bias_offset(std::size_t l) const { return offsets_[l] + sizes_[l + 1] * sizes_[l]; }

  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
};

/// Per-dimension z-score statistics. Dimensions with (near) zero spread get
/// a unit scale so constants pass through unchanged.
struct Normalizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Normalizer fit(const Matrix& data);
  static Normalizer identity(std::size_t n);

  void normalize(std::span<const double> in, std::span<double> out) const;
  void denormalize(std::span<const double> in, std::span<double> out) const;

  bool operator==(const Normalizer&) const = default;
};

/// Per-layer relative error between the analytic gradient g and central
/// differences fd with step h: ||g - fd|| / max(||g||, ||fd||).
std::vector<double> gradient_check(Mlp net, const Matrix& x, const Matrix& y, double h = 1e-6);

}  // namespace wmbench
