#include "wmbench/predictors/adam.hpp"

#include <cmath>
#include <string>

#include "wmbench/core/error.hpp"

namespace wmbench {

void adam_step(AdamState& opt, std::span<double> params, std::span<const double> grads) {
  const std::size_t n = params.size();
  if (grads.size() != n || opt.m.size() != n || opt.v.size() != n) {
    throw ShapeMismatch("adam: " + std::to_string(n) + " params, " + std::to_string(grads.size()) +
                        " grads, " + std::to_string(opt.m.size()) + " moments");
  }
  ++opt.step;
  const double t = static_cast<double>(opt.step);
  const double c1 = 1.0 - std::pow(opt.beta1, t);
  const double c2 = 1.0 - std::pow(opt.beta2, t);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = grads[i];
    opt.m[i] = opt.beta1 * opt.m[i] + (1.0 - opt.beta1) * g;
    opt.v[i] = opt.beta2 * opt.v[i] + (1.0 - opt.beta2) * g * g;
    const double m_hat = opt.m[i] / c1;
    const double v_hat = opt.v[i] / c2;
    params[i] -= opt.lr * m_hat / (std::sqrt(v_hat) + opt.eps);
  }
}

}  // namespace wmbench
