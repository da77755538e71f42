#include "wmbench/cli/run.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>

#include "wmbench/core/error.hpp"
#include "wmbench/episodes/dataset.hpp"
#include "wmbench/episodes/real_format.hpp"
#include "wmbench/harness/report.hpp"
#include "wmbench/predictors/model_io.hpp"

namespace wmbench::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string task;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  double dt = kDefaultDt;
  std::size_t steps = kDefaultHorizon;
  std::vector<std::string> ranges;
  std::string split = "train";
  std::string out;
  unsigned jobs = 1;
  bool overwrite = false;

  std::string data;
  std::string predictor;
  std::vector<std::string> predictors;
  std::vector<std::string> models;
  std::vector<std::string> prediction_dirs;
  std::string model;
  std::size_t condition_steps = kDefaultConditionSteps;
  std::size_t rollout_steps = 0;  // 0: everything after the conditioning window
  std::size_t epochs = 50;
  std::size_t batch = kDefaultBatch;
  double ridge = kDefaultRidge;
  std::vector<std::string> reports;
  std::string reference = "linear";
};

// "name=lo:hi" -> (name, Range).
std::pair<std::string, Range> parse_range(const std::string& text) {
  const auto eq = text.find('=');
  const auto colon = text.find(':', eq == std::string::npos ? 0 : eq);
  if (eq == std::string::npos || colon == std::string::npos || eq == 0) {
    throw InvalidArgument("range '" + text + "' is not of the form name=lo:hi");
  }
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const std::string lo = text.substr(eq + 1, colon - eq - 1);
    const std::string hi = text.substr(colon + 1);
    const double l = std::stod(lo, &used_lo);
    const double h = std::stod(hi, &used_hi);
    if (used_lo != lo.size() || used_hi != hi.size()) throw std::invalid_argument(text);
    return {text.substr(0, eq), Range{l, h}};
  } catch (const std::logic_error&) {
    throw InvalidArgument("range '" + text + "' has a malformed bound");
  }
}

void refuse_existing(const fs::path& path, bool overwrite) {
  if (!overwrite && fs::exists(path)) {
    throw InvalidArgument(path.string() + " already exists (pass --overwrite to replace it)");
  }
}

std::optional<std::size_t> rollout_option(const Options& o) {
  if (o.rollout_steps == 0) return std::nullopt;
  return o.rollout_steps;
}

struct NamedPredictor {
  std::unique_ptr<Predictor> predictor;
  std::optional<TaskId> task;
};

std::vector<NamedPredictor> load_predictors(const Options& o) {
  std::vector<NamedPredictor> out;
  for (const auto& name : o.predictors) {
    auto p = make_builtin(name);
    if (!p) {
      throw InvalidArgument("unknown predictor '" + name +
                            "' (built-ins: oracle, zoh, constvel; pass fitted models with --model)");
    }
    out.push_back({std::move(p), std::nullopt});
  }
  for (const auto& path : o.models) {
    LoadedModel m = load_model(path);
    out.push_back({std::move(m.predictor), m.task});
  }
  return out;
}

void check_task(const NamedPredictor& p, const Dataset& d) {
  if (p.task && *p.task != d.manifest.task) {
    throw InvalidArgument("model was fitted on " + std::string(to_string(*p.task)) + " but the data is " +
                          std::string(to_string(d.manifest.task)));
  }
}

int cmd_gen(const Options& o, std::ostream& out) {
  TaskSpec spec = TaskSpec::defaults(task_from_string(o.task));
  spec.dt = o.dt;
  spec.horizon = o.steps;
  for (const auto& r : o.ranges) {
    const auto [name, range] = parse_range(r);
    spec.set_range(name, range);
  }
  spec.validate();
  refuse_existing(fs::path(o.out) / kManifestFile, o.overwrite);
  Dataset d = generate_dataset(spec, o.count, o.seed, split_from_string(o.split), o.jobs);
  write_dataset(d, o.out, o.overwrite);
  out << "wrote " << d.episodes.size() << " " << to_string(spec.id) << " episodes to " << o.out << "\n";
  for (const auto& diag : d.manifest.diagnostics) out << "skipped: " << diag << "\n";
  return kExitOk;
}

int cmd_fit(const Options& o, std::ostream& out) {
  const Dataset d = read_dataset(o.data);
  refuse_existing(o.out, o.overwrite);
  if (o.predictor == "linear") {
    const LinearPredictor model = fit_linear(d.episodes, o.ridge);
    save_model(model, d.manifest.task, o.out);
    out << "fitted linear model on " << d.episodes.size() << " episodes -> " << o.out << "\n";
  } else if (o.predictor == "neural") {
    TrainConfig config;
    config.epochs = o.epochs;
    config.batch = o.batch;
    config.seed = o.seed;
    const TrainResult r = fit_neural_derivative(d.episodes, config);
    save_model(r.model, d.manifest.task, o.out);
    out << "fitted neural model on " << d.episodes.size() << " episodes, final loss " << format_real(r.final_loss())
        << " -> " << o.out << "\n";
  } else {
    throw InvalidArgument("fit supports --predictor linear or neural, not '" + o.predictor + "'");
  }
  return kExitOk;
}

int cmd_predict(const Options& o, std::ostream& out) {
  const Dataset d = read_dataset(o.data);
  auto predictors = load_predictors(o);
  if (predictors.size() != 1) throw InvalidArgument("predict needs exactly one --predictor or --model");
  check_task(predictors.front(), d);
  fs::create_directories(o.out);
  for (const auto& e : d.episodes) refuse_existing(fs::path(o.out) / ("pred_" + e.episode_id + ".json"), o.overwrite);
  for (const auto& e : d.episodes) {
    const PredictionRecord r = predict(*predictors.front().predictor, e, o.condition_steps, rollout_option(o));
    write_prediction(r, fs::path(o.out) / ("pred_" + e.episode_id + ".json"));
  }
  out << "wrote " << d.episodes.size() << " prediction files to " << o.out << "\n";
  return kExitOk;
}

std::vector<fs::path> json_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Dataset d = read_dataset(o.data);
  const auto predictors = load_predictors(o);
  if (predictors.empty() && o.prediction_dirs.empty()) {
    throw InvalidArgument("eval needs at least one --predictor, --model or --predictions directory");
  }
  refuse_existing(fs::path(o.out) / "report.json", o.overwrite);
  EvalReport report;
  for (const auto& p : predictors) {
    check_task(p, d);
    report.cells.push_back(evaluate(*p.predictor, d.episodes, o.condition_steps, rollout_option(o)));
  }
  for (const auto& dir : o.prediction_dirs) {
    const auto files = json_files(dir);
    report.cells.push_back(score_external(files, d.episodes));
  }
  write_report(report, o.out);
  for (const auto& c : report.cells) {
    out << to_string(c.task) << " " << c.predictor << " mse " << format_real(c.mse) << "\n";
  }
  return kExitOk;
}

int cmd_curve(const Options& o, std::ostream& out) {
  const EvalReport r = read_report(o.reports.at(0));
  for (const auto& c : r.cells) {
    if (!o.predictor.empty() && c.predictor != o.predictor) continue;
    if (!o.task.empty() && c.task != task_from_string(o.task)) continue;
    if (o.out.empty()) {
      out << "# " << to_string(c.task) << " " << c.predictor << "\n" << curve_csv(c);
    } else {
      const fs::path path = fs::path(o.out) / curve_file_name(c);
      refuse_existing(path, o.overwrite);
      fs::create_directories(o.out);
      write_text_file(path, curve_csv(c));
      out << "wrote " << path.string() << "\n";
    }
  }
  return kExitOk;
}

int cmd_radar(const Options& o, std::ostream& out) {
  EvalReport merged;
  for (const auto& path : o.reports) {
    EvalReport r = read_report(path);
    for (auto& c : r.cells) merged.cells.push_back(std::move(c));
  }
  merged.radar = radar_ratios(merged.cells, o.reference);
  if (o.out.empty()) {
    out << radar_csv(*merged.radar);
  } else {
    refuse_existing(fs::path(o.out) / "radar.csv", o.overwrite);
    refuse_existing(fs::path(o.out) / "report.json", o.overwrite);
    write_report(merged, o.out);
    out << "wrote " << (fs::path(o.out) / "radar.csv").string() << "\n";
  }
  return kExitOk;
}

void add_condition_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--condition-steps", o.condition_steps, "ground-truth warm-up states handed to the predictor")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rollout-steps", o.rollout_steps,
                  "imagined steps to score (0 = every step after the warm-up, 90 for 100-step episodes)")
      ->capture_default_str();
}

void add_predictor_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--predictor", o.predictors, "built-in predictor: oracle, zoh or constvel (repeatable)");
  cmd->add_option("--model", o.models, "fitted model file written by `fit` (repeatable)")->check(CLI::ExistingFile);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"wmbench: reward-free world-model benchmark (generate, fit, predict, evaluate)", "wmbench"};
  app.set_config("--config", "", "TOML file with the same keys as the flags ([gen], [fit], ... sections)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a seeded episode dataset");
  gen->add_option("--task", o.task, "task name, e.g. free_fall, pendulum, reprojection")->required();
  gen->add_option("--count", o.count, "number of episodes")->capture_default_str();
  gen->add_option("--seed", o.seed, "base seed; episode i uses a child seed of it")->capture_default_str();
  gen->add_option("--dt", o.dt, "time step [s]")->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--steps", o.steps, "actions per episode (states = steps + 1)")->capture_default_str();
  gen->add_option("--range", o.ranges, "override a parameter range, name=lo:hi in the parameter's unit (repeatable)");
  gen->add_option("--split", o.split, "train or eval (recorded in the manifest)")->capture_default_str();
  gen->add_option("--out", o.out, "output directory")->required();
  gen->add_option("--jobs", o.jobs, "worker threads; output is identical for any value")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen->add_flag("--overwrite", o.overwrite, "replace an existing dataset");

  auto* fit = app.add_subcommand("fit", "fit a linear or neural predictor on a training dataset");
  fit->add_option("--data", o.data, "training dataset directory")->required()->check(CLI::ExistingDirectory);
  fit->add_option("--predictor", o.predictor, "linear or neural")->required();
  fit->add_option("--out", o.out, "model file to write")->required();
  fit->add_option("--seed", o.seed, "weight-init and shuffling seed (neural)")->capture_default_str();
  fit->add_option("--epochs", o.epochs, "training epochs (neural)")->capture_default_str();
  fit->add_option("--batch", o.batch, "mini-batch size (neural)")->capture_default_str();
  fit->add_option("--ridge", o.ridge, "ridge penalty (linear)")->capture_default_str();
  fit->add_flag("--overwrite", o.overwrite, "replace an existing model file");

  auto* pred = app.add_subcommand("predict", "write one prediction file per episode");
  pred->add_option("--data", o.data, "dataset directory")->required()->check(CLI::ExistingDirectory);
  add_predictor_flags(pred, o);
  add_condition_flags(pred, o);
  pred->add_option("--out", o.out, "output directory for pred_<episode_id>.json files")->required();
  pred->add_flag("--overwrite", o.overwrite, "replace existing prediction files");

  auto* eval = app.add_subcommand("eval", "score predictors on an evaluation dataset");
  eval->add_option("--data", o.data, "evaluation dataset directory")->required()->check(CLI::ExistingDirectory);
  add_predictor_flags(eval, o);
  eval->add_option("--predictions", o.prediction_dirs, "directory of externally produced prediction files (repeatable)")
      ->check(CLI::ExistingDirectory);
  add_condition_flags(eval, o);
  eval->add_option("--out", o.out, "report directory")->required();
  eval->add_flag("--overwrite", o.overwrite, "replace an existing report");

  auto* curve = app.add_subcommand("curve", "per-horizon error curves from a report");
  curve->add_option("--report", o.reports, "report.json written by eval")->required()->check(CLI::ExistingFile)
      ->expected(1);
  curve->add_option("--task", o.task, "only this task");
  curve->add_option("--predictor", o.predictor, "only this predictor");
  curve->add_option("--out", o.out, "directory for curve_<task>_<predictor>.csv (default: stdout)");
  curve->add_flag("--overwrite", o.overwrite, "replace existing curve files");

  auto* radar = app.add_subcommand("radar", "error ratios against a reference predictor, normalized per task");
  radar->add_option("--report", o.reports, "report.json files to merge (repeatable)")->required()
      ->check(CLI::ExistingFile);
  radar->add_option("--reference", o.reference, "reference predictor name")->capture_default_str();
  radar->add_option("--out", o.out, "directory for radar.csv and the merged report (default: stdout)");
  radar->add_flag("--overwrite", o.overwrite, "replace existing outputs");

  auto* self = app.add_subcommand("selftest", "run the built-in invariant checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0 and print the help of the subcommand that asked.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (fit->parsed()) return cmd_fit(o, out);
    if (pred->parsed()) return cmd_predict(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
    if (curve->parsed()) return cmd_curve(o, out);
    if (radar->parsed()) return cmd_radar(o, out);
    if (self->parsed()) return selftest(out) == 0 ? kExitOk : kExitRuntime;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kInvalidRange:
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kFormatError:
      case ErrorCode::kShapeMismatch:
      case ErrorCode::kJoinError:
      case ErrorCode::kZeroReference:
      case ErrorCode::kActionOutOfRange:
        return kExitValidation;
      default:
        return kExitRuntime;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace wmbench::cli
