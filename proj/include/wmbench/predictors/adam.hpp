#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wmbench {

struct AdamState {
  explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}

  std::size_t step = 0;
  std::vector<double> m;
  std::vector<double> v;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Bias-corrected Adam update of `params` in place. Throws ShapeMismatch
/// when params, grads and the moment buffers differ in length.
void adam_step(AdamState& opt, std::span<double> params, std::span<const double> grads);

}  // namespace wmbench
