#pragma once

#include "wmbench/predictors/predictor.hpp"

namespace wmbench {

/// The simulator itself; zero error by construction.
class OraclePredictor final : public Predictor {
 public:
  std::string name() const override { return "oracle"; }
  Matrix rollout(const RolloutContext& ctx) const override;
};

/// Repeats the last conditioning state.
class ZeroOrderHold final : public Predictor {
 public:
  std::string name() const override { return "zoh"; }
  Matrix rollout(const RolloutContext& ctx) const override;
};

/// Advances every position-like dimension by its observed rate times dt
/// and every quaternion block by its body rate; all rates are held.
class ConstantVelocity final : public Predictor {
 public:
  std::string name() const override { return "constvel"; }
  Matrix rollout(const RolloutContext& ctx) const override;
};

}  // namespace wmbench
