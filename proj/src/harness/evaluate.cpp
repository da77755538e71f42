#include "wmbench/harness/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wmbench/core/error.hpp"

namespace wmbench {

ScoringMask ScoringMask::for_layout(const StateLayout& layout) {
  ScoringMask mask;
  const bool has_pixels = std::any_of(layout.dims.begin(), layout.dims.end(),
                                      [](const DimSpec& d) { return d.role == DimRole::kPixel; });
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const DimSpec& d = layout.dims[i];
    if (has_pixels && d.role != DimRole::kPixel) continue;
    mask.dims.push_back(i);
    if (d.mask.empty()) {
      mask.gate.emplace_back();
    } else {
      const auto g = layout.index_of(d.mask);
      if (!g) throw InvalidArgument("dimension " + d.name + " is gated by unknown dimension " + d.mask);
      mask.gate.push_back(g);
    }
  }
  return mask;
}

namespace {

struct EpisodeScore {
  std::vector<double> step_error;  // per rollout step
  std::vector<bool> defined;
};

EpisodeScore score_episode(const PredictionRecord& r, const Episode& e, const ScoringMask& mask) {
  const std::size_t c = r.condition_steps;
  const std::size_t n = r.states.rows();
  if (r.states.cols() != e.states.cols()) {
    throw ShapeMismatch("prediction for " + e.episode_id + " has " + std::to_string(r.states.cols()) +
                        " dims; the episode has " + std::to_string(e.states.cols()));
  }
  if (c < 1 || c + n > e.steps()) {
    throw ShapeMismatch("prediction for " + e.episode_id + " covers steps " + std::to_string(c) + ".." +
                        std::to_string(c + n) + " beyond the scored window of " + std::to_string(e.steps()) +
                        " steps");
  }
  EpisodeScore s{std::vector<double>(n, 0.0), std::vector<bool>(n, false)};
  for (std::size_t h = 0; h < n; ++h) {
    const auto pred = r.states.row(h);
    const auto truth = e.states.row(c + h);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < mask.dims.size(); ++k) {
      if (const auto& g = mask.gate[k]; g && truth[*g] != 1.0) continue;
      const std::size_t i = mask.dims[k];
      const double diff = pred[i] - truth[i];
      sum += diff * diff;
      ++count;
    }
    if (count > 0) {
      s.step_error[h] = sum / static_cast<double>(count);
      s.defined[h] = true;
    }
  }
  return s;
}

}  // namespace

CellReport score(std::span<const PredictionRecord> records, std::span<const Episode> episodes) {
  if (episodes.empty()) throw InvalidArgument("cannot score an empty episode set");
  const TaskId task = episodes.front().task.id;
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    if (episodes[i].task.id != task) throw InvalidArgument("episode set mixes tasks");
    if (!by_id.emplace(episodes[i].episode_id, i).second) {
      throw JoinError("episode " + episodes[i].episode_id + " appears twice in the episode set");
    }
  }
  std::vector<const PredictionRecord*> joined(episodes.size(), nullptr);
  for (const auto& r : records) {
    const auto it = by_id.find(r.episode_id);
    if (it == by_id.end()) throw JoinError("prediction for unknown episode " + r.episode_id);
    if (joined[it->second]) throw JoinError("two predictions for episode " + r.episode_id);
    joined[it->second] = &r;
  }
  CellReport report;
  report.task = task;
  report.episodes = episodes.size();
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    if (!joined[i]) throw JoinError("no prediction for episode " + episodes[i].episode_id);
  }
  const PredictionRecord& first = *joined[by_id.begin()->second];
  report.predictor = first.predictor;
  report.condition_steps = first.condition_steps;
  const std::size_t n = first.states.rows();
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    if (joined[i]->condition_steps != report.condition_steps) {
      throw JoinError("prediction for " + episodes[i].episode_id + " uses " +
                      std::to_string(joined[i]->condition_steps) + " conditioning steps, expected " +
                      std::to_string(report.condition_steps));
    }
    if (joined[i]->states.rows() != n) {
      throw ShapeMismatch("prediction for " + episodes[i].episode_id + " has " +
                          std::to_string(joined[i]->states.rows()) + " steps, expected " + std::to_string(n));
    }
  }
  if (n == 0) throw ShapeMismatch("predictions hold no imagined steps");

  // Reduced in episode_id order so the result never depends on the order
  // of the inputs or on scheduling.
  const ScoringMask mask = ScoringMask::for_layout(episodes.front().state_layout);
  std::vector<double> curve_sum(n, 0.0);
  std::vector<std::size_t> curve_count(n, 0);
  double mse_sum = 0.0;
  std::size_t mse_count = 0;
  for (const auto& [id, i] : by_id) {
    if (episodes[i].state_layout != episodes.front().state_layout) {
      throw ShapeMismatch("episode " + episodes[i].episode_id + " has a different state layout");
    }
    const EpisodeScore s = score_episode(*joined[i], episodes[i], mask);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t h = 0; h < n; ++h) {
      if (!s.defined[h]) continue;
      sum += s.step_error[h];
      ++count;
      curve_sum[h] += s.step_error[h];
      ++curve_count[h];
    }
    if (count > 0) {
      mse_sum += sum / static_cast<double>(count);
      ++mse_count;
    }
  }
  report.mse = mse_count > 0 ? mse_sum / static_cast<double>(mse_count) : 0.0;
  report.curve.resize(n);
  for (std::size_t h = 0; h < n; ++h) {
    report.curve[h] = curve_count[h] > 0 ? curve_sum[h] / static_cast<double>(curve_count[h]) : 0.0;
  }
  return report;
}

std::vector<PredictionRecord> predict_all(const Predictor& p, std::span<const Episode> episodes,
                                          std::size_t condition_steps, std::optional<std::size_t> rollout_steps) {
  std::vector<PredictionRecord> records;
  records.reserve(episodes.size());
  for (const auto& e : episodes) records.push_back(predict(p, e, condition_steps, rollout_steps));
  return records;
}

CellReport evaluate(const Predictor& p, std::span<const Episode> episodes, std::size_t condition_steps,
                    std::optional<std::size_t> rollout_steps) {
  const auto records = predict_all(p, episodes, condition_steps, rollout_steps);
  return score(records, episodes);
}

CellReport score_external(std::span<const std::filesystem::path> prediction_files,
                          std::span<const Episode> episodes) {
  std::vector<PredictionRecord> records;
  records.reserve(prediction_files.size());
  for (const auto& f : prediction_files) records.push_back(read_prediction(f));
  return score(records, episodes);
}

std::vector<CurvePoint> horizon_curve(const CellReport& report) {
  std::vector<CurvePoint> out;
  out.reserve(report.curve.size());
  for (std::size_t h = 0; h < report.curve.size(); ++h) out.push_back({h + 1, report.curve[h]});
  return out;
}

RadarTable radar_ratios(std::span<const CellReport> cells, const std::string& reference) {
  RadarTable table;
  table.reference = reference;
  std::map<std::pair<TaskId, std::string>, double> mse;
  for (const auto& c : cells) {
    if (!mse.emplace(std::make_pair(c.task, c.predictor), c.mse).second) {
      throw InvalidArgument("duplicate cell for " + c.predictor + " on " + std::string(to_string(c.task)));
    }
    if (std::find(table.tasks.begin(), table.tasks.end(), c.task) == table.tasks.end()) table.tasks.push_back(c.task);
    if (std::find(table.predictors.begin(), table.predictors.end(), c.predictor) == table.predictors.end()) {
      table.predictors.push_back(c.predictor);
    }
  }
  std::sort(table.tasks.begin(), table.tasks.end());
  if (std::find(table.predictors.begin(), table.predictors.end(), reference) == table.predictors.end()) {
    throw InvalidArgument("reference predictor '" + reference + "' has no cells");
  }
  for (TaskId t : table.tasks) {
    const std::string task(to_string(t));
    const auto ref = mse.find({t, reference});
    if (ref == mse.end()) throw InvalidArgument("missing reference cell for task " + task);
    if (!(ref->second > 0.0)) throw ZeroReference("reference '" + reference + "' has zero error on " + task);
    std::vector<double> ratios;
    for (const auto& p : table.predictors) {
      const auto it = mse.find({t, p});
      if (it == mse.end()) throw InvalidArgument("missing cell for " + p + " on " + task);
      ratios.push_back(it->second / ref->second);
    }
    const double worst = *std::max_element(ratios.begin(), ratios.end());
    std::vector<double> normalized;
    for (double r : ratios) normalized.push_back(r / worst);
    table.ratio.push_back(std::move(ratios));
    table.normalized.push_back(std::move(normalized));
  }
  return table;
}

}  // namespace wmbench
