#include "wmbench/predictors/baselines.hpp"

#include <cmath>

#include "wmbench/core/quat.hpp"

namespace wmbench {

Matrix OraclePredictor::rollout(const RolloutContext& ctx) const {
  return autoregress(ctx, [&ctx](std::span<const double> s, std::span<const double> a, std::size_t) {
    return step(ctx.task, ctx.params, s, a);
  });
}

Matrix ZeroOrderHold::rollout(const RolloutContext& ctx) const {
  return autoregress(ctx, [](std::span<const double> s, std::span<const double>, std::size_t) {
    return StateVector(s.begin(), s.end());
  });
}

Matrix ConstantVelocity::rollout(const RolloutContext& ctx) const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (dim, rate dim)
  for (std::size_t i = 0; i < ctx.layout.size(); ++i) {
    const auto& rate = ctx.layout.dims[i].rate;
    if (rate.empty()) continue;
    if (const auto j = ctx.layout.index_of(rate)) pairs.emplace_back(i, *j);
  }
  const double dt = ctx.task.dt;
  const auto blocks = ctx.layout.quaternion_blocks;

  return autoregress(ctx, [&](std::span<const double> s, std::span<const double>, std::size_t) {
    StateVector next(s.begin(), s.end());
    for (const auto& [i, j] : pairs) next[i] = s[i] + s[j] * dt;
    for (const auto& b : blocks) {
      if (!b.rate_offset) continue;
      const std::size_t o = b.offset;
      const std::size_t r = *b.rate_offset;
      const Vec3 w{s[r], s[r + 1], s[r + 2]};
      const Quat q{s[o], s[o + 1], s[o + 2], s[o + 3]};
      const Quat q_next = (q * Quat::from_axis_angle(w, norm(w) * dt)).normalized();
      next[o] = q_next.w;
      next[o + 1] = q_next.x;
      next[o + 2] = q_next.y;
      next[o + 3] = q_next.z;
    }
    return next;
  });
}

}  // namespace wmbench
