// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// values behind each verdict. Usage: acceptance <criterion>|all

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wmbench/cli/run.hpp"
#include "wmbench/episodes/canonical_json.hpp"
#include "wmbench/episodes/real_format.hpp"
#include "wmbench/geometry/camera.hpp"
#include "wmbench/harness/evaluate.hpp"
#include "wmbench/predictors/baselines.hpp"
#include "wmbench/predictors/linear.hpp"
#include "wmbench/predictors/neural_derivative.hpp"
#include "wmbench/tasks/transitions.hpp"

using namespace wmbench;
namespace fs = std::filesystem;

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// Collects the sub-checks of one criterion.
class Verdict {
 public:
  void check(bool ok, const std::string& what) {
    lines_.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  bool ok_ = true;
  std::vector<std::string> lines_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ----------------------------------------------------------- conservation

void conservation(Verdict& v) {
  {
    const TaskSpec spec = TaskSpec::defaults(TaskId::kBouncingBall);
    Rng rng(101);
    std::size_t events = 0;
    double worst = 0.0;
    while (events < 200) {
      const auto init = sample_init(spec, rng);
      StateVector s = init.state;
      const double v0 = std::hypot(s[2], s[3]);
      for (int t = 0; t < 100; ++t) {
        EventLog log;
        s = step(spec, init.params, s, {}, &log);
        events += log.size();
        worst = std::max(worst, std::abs(std::hypot(s[2], s[3]) - v0));
      }
    }
    v.check(worst <= 1e-12, "bouncing ball: max |speed - speed0| = " + sci(worst) + " over " +
                                std::to_string(events) + " wall events");
  }
  {
    const TaskSpec spec = TaskSpec::defaults(TaskId::kElasticCollision);
    Rng rng(102);
    std::size_t contacts = 0;
    double worst_ke = 0.0, worst_p = 0.0;
    while (contacts < 100) {
      const auto init = sample_init(spec, rng);
      const double m1 = init.params.at("mass_1"), m2 = init.params.at("mass_2");
      auto ke = [&](const StateVector& s) {
        return 0.5 * m1 * (s[2] * s[2] + s[3] * s[3]) + 0.5 * m2 * (s[6] * s[6] + s[7] * s[7]);
      };
      StateVector s = init.state;
      const double ke0 = ke(s);
      for (int t = 0; t < 100; ++t) {
        EventLog log;
        s = step(spec, init.params, s, {}, &log);
        worst_ke = std::max(worst_ke, std::abs(ke(s) - ke0) / ke0);
        for (const auto& ev : log) {
          if (ev.name != "disc_contact") continue;
          ++contacts;
          const auto& a = ev.before;
          const auto& b = ev.after;
          worst_p = std::max({worst_p, std::abs(m1 * a[2] + m2 * a[6] - (m1 * b[2] + m2 * b[6])),
                              std::abs(m1 * a[3] + m2 * a[7] - (m1 * b[3] + m2 * b[7]))});
        }
      }
    }
    v.check(worst_ke <= 1e-12 && worst_p <= 1e-12,
            "elastic collision: relative KE error " + sci(worst_ke) + ", momentum jump " + sci(worst_p) + " over " +
                std::to_string(contacts) + " disc contacts");
  }
  {
    TaskSpec spec = TaskSpec::defaults(TaskId::kPendulum);
    spec.horizon = 2000;
    double worst = 0.0;
    for (const auto& e : generate(spec, 5, 103)) {
      const double scale = e.params.at("g") * e.params.at("length");
      const double e0 = tasks::pendulum_energy(e.states.row(0), e.params);
      for (std::size_t t = 1; t < e.states.rows(); ++t) {
        worst = std::max(worst, std::abs(tasks::pendulum_energy(e.states.row(t), e.params) - e0) / scale);
      }
    }
    v.check(worst <= 1e-7, "pendulum: relative energy drift " + sci(worst) + " over 2000 steps");
  }
  {
    TaskSpec spec = TaskSpec::defaults(TaskId::kRotation);
    spec.horizon = 10000;
    double worst_norm = 0.0;
    bool rate_exact = true;
    for (const auto& e : generate(spec, 2, 104)) {
      const auto w0 = e.states.row(0);
      for (std::size_t t = 0; t < e.states.rows(); ++t) {
        const auto s = e.states.row(t);
        worst_norm = std::max(worst_norm, std::abs(std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3]) - 1));
        rate_exact = rate_exact && s[4] == w0[4] && s[5] == w0[5] && s[6] == w0[6];
      }
    }
    v.check(worst_norm <= 1e-12 && rate_exact, "rotation: max ||q| - 1| = " + sci(worst_norm) +
                                                   ", angular velocity bit-identical: " + (rate_exact ? "yes" : "no"));
  }
  {
    std::size_t rises = 0, mech_rises = 0, steps = 0;
    double worst = 0.0;
    for (const auto& e : generate(TaskSpec::defaults(TaskId::kSpin), 20, 105)) {
      const tasks::TopGeometry top = tasks::spin_geometry(e.params);
      auto mechanical = [&](std::span<const double> s) {
        const double height = quat_rotate(Quat{s[0], s[1], s[2], s[3]}, Vec3{0, 0, top.pivot_to_cm}).z;
        return tasks::spin_kinetic_energy(s, e.params) + top.mass * e.params.at("g") * height;
      };
      double prev = tasks::spin_kinetic_energy(e.states.row(0), e.params);
      double prev_mech = mechanical(e.states.row(0));
      for (std::size_t t = 1; t < e.states.rows(); ++t, ++steps) {
        const double mech = mechanical(e.states.row(t));
        if (mech > prev_mech + 1e-12 * std::max(1.0, prev_mech)) ++mech_rises;
        prev_mech = mech;
        const double ke = tasks::spin_kinetic_energy(e.states.row(t), e.params);
        if (ke > prev) {
          ++rises;
          worst = std::max(worst, (ke - prev) / prev);
        }
        prev = ke;
      }
    }
    // Kinetic energy alone rises while gravity tips the top over; the
    // mechanical total is what damping and ground contact can only remove.
    v.check(mech_rises == 0, "spin: mechanical energy rose in " + std::to_string(mech_rises) + " steps");
    v.check(rises == 0, "spin: kinetic energy rose in " + std::to_string(rises) + " of " + std::to_string(steps) +
                            " steps (largest relative rise " + sci(worst) + ")");
  }
}

// ------------------------------------------------------------ closed form

void closed_form(Verdict& v) {
  {
    double worst = 0.0, worst_t = 0.0, worst_x = 0.0;
    for (TaskId id : {TaskId::kFreeFall, TaskId::kProjectile}) {
      const TaskSpec spec = TaskSpec::defaults(id);
      for (const auto& e : generate(spec, 20, 201)) {
        const double g = e.params.at("g"), h = e.params.at("height"), r = e.params.at("radius");
        const double vx = id == TaskId::kProjectile ? e.params.at("speed") : 0.0;
        const double t_hit = std::sqrt(2 * (h - r) / g);
        for (std::size_t n = 0; n < e.states.rows() && n * spec.dt < t_hit; ++n) {
          const double t = n * spec.dt;
          const auto s = e.states.row(n);
          worst = std::max({worst, std::abs(s[0] - vx * t), std::abs(s[2] - (h - 0.5 * g * t * t)),
                            std::abs(s[3] - vx), std::abs(s[5] + g * t)});
        }
        StateVector s(e.states.row(0).begin(), e.states.row(0).end());
        for (std::size_t n = 0;; ++n) {
          EventLog log;
          s = step(spec, e.params, s, {}, &log);
          if (log.empty()) continue;
          const double t_event = n * spec.dt + log.front().time;
          worst_t = std::max(worst_t, std::abs(t_event - t_hit));
          worst_x = std::max(worst_x, std::abs(log.front().before[0] - vx * t_hit));
          break;
        }
      }
    }
    v.check(worst <= 1e-10, "free fall / projectile: max deviation before first bounce " + sci(worst));
    v.check(worst_t <= 1e-8 && worst_x <= 1e-8,
            "first bounce: time error " + sci(worst_t) + " s, range error " + sci(worst_x) + " m");
  }
  {
    double worst = 0.0;
    TaskSpec spec = TaskSpec::defaults(TaskId::kInclinedPlane);
    for (const auto& e : generate(spec, 20, 202)) {
      const double a = tasks::inclined_acceleration(e.params), v0 = e.params.at("speed");
      for (std::size_t n = 0; n < e.states.rows(); ++n) {
        const double t = n * spec.dt;
        worst = std::max({worst, std::abs(e.states(n, 0) - (v0 * t + 0.5 * a * t * t)),
                          std::abs(e.states(n, 1) - (v0 + a * t))});
      }
    }
    v.check(worst <= 1e-10, "inclined plane: max deviation " + sci(worst));
  }
  {
    // Unforced circular motion returns to its start after one period.
    double worst = 0.0;
    const TaskSpec spec = TaskSpec::defaults(TaskId::kCircular);
    Rng rng(203);
    for (int i = 0; i < 20; ++i) {
      const auto init = sample_init(spec, rng);
      const double radius = init.params.at("length");
      const double omega = init.params.at("speed") / radius;
      const double period = 2 * M_PI / omega;
      const auto n = static_cast<std::size_t>(std::floor(period / spec.dt));
      StateVector s = init.state;
      for (std::size_t k = 0; k < n; ++k) s = tasks::step_circular(s, 0.0, init.params, spec.dt, 1.0);
      const double rest = period - n * spec.dt;
      s = tasks::step_circular(s, 0.0, init.params, rest, 1.0);
      for (std::size_t j = 0; j < 4; ++j) worst = std::max(worst, std::abs(s[j] - init.state[j]));
    }
    v.check(worst <= 1e-10, "circular: state after one period differs from start by " + sci(worst));
  }
  {
    bool exact = true;
    for (const auto& e : generate(TaskSpec::defaults(TaskId::kRolling), 50, 204)) {
      const double r = e.params.at("radius");
      for (std::size_t n = 0; n < e.states.rows(); ++n) exact = exact && e.states(n, 1) == e.states(n, 3) * r;
    }
    v.check(exact, std::string("rolling: v == omega r bit-exactly at every step: ") + (exact ? "yes" : "no"));
  }
}

// --------------------------------------------------------------- geometry

void geometry_suite(Verdict& v) {
  using namespace geometry;
  const Intrinsics intr(320, 240, M_PI / 3);
  Rng rng(301);
  auto random_pose = [&] {
    const Quat q =
        Quat{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}.normalized();
    return CameraPose{{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)}, q};
  };
  {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const CameraPose pose = random_pose();
      const Vec3 p = pose.position + quat_rotate(pose.orientation, Vec3{0, 0, -rng.uniform(0.1, 50)});
      const Projection pr = project(pose, intr, p);
      worst = std::max({worst, std::abs(pr.u - intr.cx()), std::abs(pr.v - intr.cy())});
    }
    v.check(worst <= 1e-9, "optical axis lands on the principal point within " + sci(worst) + " px");
  }
  {
    const Intrinsics square(100, 100, M_PI / 2);  // focal length 50 px
    const Projection pr = project(CameraPose{}, square, {1, 0, -5});
    v.check(std::abs(pr.u - 60.0) <= 1e-12 && std::abs(pr.v - 50.0) <= 1e-12,
            "pinhole u = cx + f X/Z: (" + std::to_string(pr.u) + ", " + std::to_string(pr.v) + ") vs (60, 50)");
  }
  {
    double worst = 0.0;
    int checked = 0;
    while (checked < 1000) {
      const CameraPose pose = random_pose();
      const Vec3 p_cam{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-10, -0.5)};
      const Vec3 p = pose.position + quat_rotate(pose.orientation, p_cam);
      const Projection pr = project(pose, intr, p);
      if (!pr.visible) continue;
      worst = std::max(worst, norm(back_project(pose, intr, pr.u, pr.v, -p_cam.z) - p));
      ++checked;
    }
    v.check(worst <= 1e-9, "project / back-project round trip: max error " + sci(worst) + " m over 1000 points");
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const CameraPose pose = random_pose();
      const std::vector<double> a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), 0, 0, 0};
      const std::vector<double> neg{-a[0], -a[1], -a[2], 0, 0, 0};
      worst = std::max(worst, norm(step_camera(step_camera(pose, a), neg).position - pose.position));
    }
    v.check(worst <= 1e-12, "camera translation undone by its negation within " + sci(worst) + " m");
  }
}

// --------------------------------------------------------------- protocol

void protocol(Verdict& v) {
  for (TaskId id : all_tasks()) {
    const auto eps = generate(TaskSpec::defaults(id), 10, 401);
    const CellReport c = evaluate(OraclePredictor{}, eps);
    v.check(c.mse == 0.0 && c.curve.size() == 90,
            "oracle " + std::string(to_string(id)) + ": mse " + sci(c.mse) + " over " +
                std::to_string(c.curve.size()) + " steps");
  }
  {
    // A box far larger than the ball's reach keeps every window bounce-free:
    // ZOH then misses only the displacement sigma h dt, spread over 4 dims.
    TaskSpec spec = TaskSpec::defaults(TaskId::kBouncingBall);
    spec.set_range("box", {1000, 1000});
    std::vector<Episode> eps;
    for (const auto& e : generate(spec, 40, 402)) {
      bool bounced = false;
      for (std::size_t t = 1; t < e.states.rows(); ++t) {
        bounced = bounced || e.states(t, 2) != e.states(0, 2) || e.states(t, 3) != e.states(0, 3);
      }
      if (!bounced && eps.size() < 20) eps.push_back(e);
    }
    double expected = 0.0;
    for (const auto& e : eps) {
      const double sigma = e.params.at("speed");
      double sum = 0.0;
      for (int h = 1; h <= 90; ++h) sum += std::pow(sigma * h * spec.dt, 2) / 4.0;
      expected += sum / 90.0 / eps.size();
    }
    const double got = evaluate(ZeroOrderHold{}, eps).mse;
    v.check(std::abs(got - expected) <= 1e-9,
            "zoh on " + std::to_string(eps.size()) + " bounce-free bouncing-ball episodes: mse " + sci(got) + " vs closed form " + sci(expected));
  }
  {
    const std::vector<CellReport> cells{{"a", TaskId::kPendulum, 1, 10, 2.0, {}},
                                        {"b", TaskId::kPendulum, 1, 10, 4.0, {}},
                                        {"c", TaskId::kPendulum, 1, 10, 8.0, {}}};
    const RadarTable t = radar_ratios(cells, "a");
    v.check(t.normalized[0] == std::vector<double>{0.25, 0.5, 1.0}, "radar {2,4,8} -> {" +
                                                                         format_real(t.normalized[0][0]) + "," +
                                                                         format_real(t.normalized[0][1]) + "," +
                                                                         format_real(t.normalized[0][2]) + "}");
  }
}

// ------------------------------------------------------------ determinism

bool same_tree(const fs::path& a, const fs::path& b, std::size_t& files) {
  files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    if (!fs::exists(other) || read_text_file(entry.path()) != read_text_file(other)) return false;
    ++files;
  }
  std::size_t count_b = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(b)) ++count_b;
  return count_b == files;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "wmbench");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

void determinism(Verdict& v) {
  const fs::path root = fs::temp_directory_path() / "wmbench_acceptance_determinism";
  fs::remove_all(root);
  for (const char* task : {"bouncing_ball", "spin", "reprojection"}) {
    const std::string base = (root / task).string();
    const bool ran = cli({"gen", "--task", task, "--count", "50", "--seed", "9", "--out", base + "_a"}) == 0 &&
                     cli({"gen", "--task", task, "--count", "50", "--seed", "9", "--out", base + "_b"}) == 0 &&
                     cli({"gen", "--task", task, "--count", "50", "--seed", "9", "--jobs", "8", "--out",
                          base + "_c"}) == 0;
    std::size_t files_ab = 0, files_ac = 0;
    const bool ab = ran && same_tree(base + "_a", base + "_b", files_ab);
    const bool ac = ran && same_tree(base + "_a", base + "_c", files_ac);
    v.check(ab && ac, std::string("gen ") + task + ": two runs identical: " + (ab ? "yes" : "no") +
                          ", --jobs 1 vs 8 identical: " + (ac ? "yes" : "no") + " (" + std::to_string(files_ab) +
                          " files)");
  }
  const std::string data = (root / "pendulum_train").string();
  const bool fitted = cli({"gen", "--task", "pendulum", "--count", "1000", "--seed", "1", "--out", data}) == 0 &&
                      cli({"fit", "--data", data, "--predictor", "neural", "--seed", "3", "--out",
                           (root / "neural_a.json").string()}) == 0 &&
                      cli({"fit", "--data", data, "--predictor", "neural", "--seed", "3", "--out",
                           (root / "neural_b.json").string()}) == 0;
  const bool same = fitted && read_text_file(root / "neural_a.json") == read_text_file(root / "neural_b.json");
  v.check(same, std::string("neural training (1000 episodes, 50 epochs) twice with seed 3: model files identical: ") +
                    (same ? "yes" : "no"));
  fs::remove_all(root);
}

// --------------------------------------------------------------- learning

void learning(Verdict& v) {
  {
    TaskSpec spec = TaskSpec::defaults(TaskId::kInclinedPlane);
    spec.set_range("friction", {0.1, 0.1});
    spec.set_range("angle", {30 * M_PI / 180, 30 * M_PI / 180});
    const auto train = generate(spec, 100, 501);
    const auto test = generate(spec, 50, 502);
    const double mse = evaluate(fit_linear(train), test).mse;
    v.check(mse < 1e-6, "linear on inclined plane (mu 0.1, 30 deg): rollout mse " + sci(mse));
  }
  {
    const TaskSpec spec = TaskSpec::defaults(TaskId::kPendulum);
    const auto train = generate(spec, 1000, 503);
    const auto test = generate(spec, 100, 504);
    TrainConfig config;
    config.epochs = 50;
    const TrainResult r = fit_neural_derivative(train, config);
    const double neural = evaluate(r.model, test).mse;
    const double zoh = evaluate(ZeroOrderHold{}, test).mse;
    v.check(neural < zoh, "neural derivative on pendulum: mse " + sci(neural) + " vs zoh " + sci(zoh) +
                              " (training loss " + sci(r.epoch_loss.front()) + " -> " + sci(r.final_loss()) + ")");
  }
  {
    Rng rng(505);
    Mlp net({8, 64, 64, 6});
    net.init_xavier(rng);
    for (double& p : net.parameters()) p += rng.uniform(-0.05, 0.05);
    Matrix x(64, 8), y(64, 6);
    for (double& e : x.entries()) e = rng.uniform(-1, 1);
    for (double& e : y.entries()) e = rng.uniform(-1, 1);
    double worst = 0.0;
    for (double e : gradient_check(net, x, y)) worst = std::max(worst, e);
    v.check(worst < 1e-4, "gradient check: max per-layer relative error " + sci(worst));
  }
}

// ---------------------------------------------------------- horizon curve

void horizon_curve_suite(Verdict& v) {
  std::size_t windows = 0, violations = 0;
  for (const auto& e : generate(TaskSpec::defaults(TaskId::kProjectile), 50, 601)) {
    std::size_t bounce = e.states.rows();
    for (std::size_t t = 1; t < e.states.rows(); ++t) {
      if (e.states(t, 5) > e.states(t - 1, 5)) {
        bounce = t;
        break;
      }
    }
    const CellReport c = evaluate(ZeroOrderHold{}, std::span(&e, 1));
    // curve[h - 1] compares against state 10 + h, which precedes the bounce
    // when 10 + h < bounce.
    for (std::size_t h = 2; 10 + h < bounce && h <= c.curve.size(); ++h) {
      ++windows;
      if (c.curve[h - 1] < c.curve[h - 2]) ++violations;
    }
  }
  v.check(windows > 0 && violations == 0, "projectile zoh curve pre-bounce: " + std::to_string(violations) +
                                              " decreases in " + std::to_string(windows) + " step pairs");
  bool zero = true;
  for (TaskId id : all_tasks()) {
    for (double e : evaluate(OraclePredictor{}, generate(TaskSpec::defaults(id), 5, 602)).curve) zero = zero && e == 0.0;
  }
  v.check(zero, std::string("oracle curve identically zero on every task: ") + (zero ? "yes" : "no"));
}

struct Criterion {
  const char* name;
  const char* title;
  double budget_s;  // 0 = no runtime bound
  std::function<void(Verdict&)> run;
};

const Criterion kCriteria[] = {
    {"conservation", "conservation suite", 30, conservation},
    {"closed_form", "closed-form suite", 10, closed_form},
    {"geometry", "geometry suite", 0, geometry_suite},
    {"protocol", "protocol exactness", 0, protocol},
    {"determinism", "determinism", 0, determinism},
    {"learning", "learning sanity", 300, learning},
    {"horizon_curve", "horizon-curve property", 0, horizon_curve_suite},
};

bool run_criterion(const Criterion& c) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(v);
  } catch (const std::exception& e) {
    v.check(false, std::string("threw: ") + e.what());
  }
  const double elapsed = seconds_since(start);
  if (c.budget_s > 0) v.check(elapsed < c.budget_s, "runtime " + sci(elapsed) + " s (budget " + sci(c.budget_s) + " s)");
  std::cout << (v.ok() ? "PASS " : "FAIL ") << c.title << " (" << sci(elapsed) << " s)\n";
  for (const auto& line : v.lines()) std::cout << line << "\n";
  return v.ok();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  bool ok = true;
  bool matched = false;
  for (const auto& c : kCriteria) {
    if (which != "all" && which != c.name) continue;
    matched = true;
    ok = run_criterion(c) && ok;
  }
  if (!matched) {
    std::cerr << "unknown criterion " << which << "\n";
    return 2;
  }
  return ok ? 0 : 1;
}
