#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "wmbench/cli/run.hpp"
#include "wmbench/core/error.hpp"
#include "wmbench/harness/evaluate.hpp"
#include "wmbench/predictors/baselines.hpp"
#include "wmbench/tasks/transitions.hpp"

namespace wmbench::cli {

namespace {

struct Check {
  const char* name;
  std::function<std::string()> run;  // empty string on success, else the reason
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

std::string replay_all_tasks() {
  for (TaskId id : all_tasks()) {
    for (const auto& e : generate(TaskSpec::defaults(id), 3, 11)) {
      if (const auto t = first_inconsistent_transition(e)) {
        return std::string(to_string(id)) + " transition " + std::to_string(*t) + " does not replay";
      }
    }
  }
  return {};
}

std::string oracle_zero() {
  for (TaskId id : all_tasks()) {
    const auto episodes = generate(TaskSpec::defaults(id), 2, 5);
    const double mse = evaluate(OraclePredictor{}, episodes).mse;
    if (mse != 0.0) return std::string(to_string(id)) + " oracle mse " + fmt(mse);
  }
  return {};
}

std::string bouncing_speed() {
  for (const auto& e : generate(TaskSpec::defaults(TaskId::kBouncingBall), 10, 3)) {
    const auto s0 = e.states.row(0);
    const double v0 = std::hypot(s0[2], s0[3]);
    for (std::size_t t = 1; t < e.states.rows(); ++t) {
      const auto s = e.states.row(t);
      if (std::abs(std::hypot(s[2], s[3]) - v0) > 1e-12 * std::max(1.0, v0)) return "speed changed at step " + std::to_string(t);
    }
  }
  return {};
}

std::string pendulum_drift() {
  TaskSpec spec = TaskSpec::defaults(TaskId::kPendulum);
  spec.horizon = 2000;
  for (const auto& e : generate(spec, 3, 9)) {
    const double scale = e.params.at("g") * e.params.at("length");
    const double e0 = tasks::pendulum_energy(e.states.row(0), e.params);
    double worst = 0.0;
    for (std::size_t t = 1; t < e.states.rows(); ++t) {
      worst = std::max(worst, std::abs(tasks::pendulum_energy(e.states.row(t), e.params) - e0) / scale);
    }
    if (worst > 1e-7) return "relative drift " + fmt(worst);
  }
  return {};
}

std::string rotation_norm() {
  TaskSpec spec = TaskSpec::defaults(TaskId::kRotation);
  spec.horizon = 10000;
  const Episode e = generate_episode(spec, 4);
  const auto w0 = e.states.row(0);
  for (std::size_t t = 0; t < e.states.rows(); ++t) {
    const auto s = e.states.row(t);
    const double n = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3]);
    if (std::abs(n - 1.0) > 1e-12) return "quaternion norm " + fmt(n - 1.0) + " off at step " + std::to_string(t);
    if (s[4] != w0[4] || s[5] != w0[5] || s[6] != w0[6]) return "angular velocity changed at step " + std::to_string(t);
  }
  return {};
}

std::string spin_energy() {
  for (const auto& e : generate(TaskSpec::defaults(TaskId::kSpin), 10, 2)) {
    double prev = tasks::spin_kinetic_energy(e.states.row(0), e.params);
    for (std::size_t t = 1; t < e.states.rows(); ++t) {
      const double ke = tasks::spin_kinetic_energy(e.states.row(t), e.params);
      if (ke > prev) return "kinetic energy rose by " + fmt(ke - prev) + " at step " + std::to_string(t);
      prev = ke;
    }
  }
  return {};
}

std::string radar_example() {
  std::vector<CellReport> cells{{"ref", TaskId::kPendulum, 1, 10, 2.0, {}},
                                {"b", TaskId::kPendulum, 1, 10, 4.0, {}},
                                {"c", TaskId::kPendulum, 1, 10, 8.0, {}}};
  const RadarTable t = radar_ratios(cells, "ref");
  if (t.normalized[0] != std::vector<double>{0.25, 0.5, 1.0}) return "normalized ratios differ from 0.25, 0.5, 1";
  return {};
}

}  // namespace

int selftest(std::ostream& out) {
  const Check checks[] = {
      {"replay: stored transitions reproduce bit-exactly", replay_all_tasks},
      {"protocol: oracle mse is zero on every task", oracle_zero},
      {"conservation: bouncing-ball speed", bouncing_speed},
      {"conservation: pendulum energy drift <= 1e-7 over 2000 steps", pendulum_drift},
      {"conservation: rotation |w| constant, |q| = 1", rotation_norm},
      {"conservation: spin kinetic energy non-increasing", spin_energy},
      {"protocol: radar {2,4,8} -> {0.25,0.5,1}", radar_example},
  };
  int failures = 0;
  for (const auto& c : checks) {
    std::string why;
    try {
      why = c.run();
    } catch (const std::exception& e) {
      why = std::string("threw ") + e.what();
    }
    if (why.empty()) {
      out << "PASS " << c.name << "\n";
    } else {
      out << "FAIL " << c.name << ": " << why << "\n";
      ++failures;
    }
  }
  out << (failures == 0 ? "selftest passed" : "selftest failed: " + std::to_string(failures) + " check(s)") << "\n";
  return failures;
}

}  // namespace wmbench::cli
