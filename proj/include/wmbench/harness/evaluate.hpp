#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wmbench/predictors/predictor.hpp"

namespace wmbench {

/// Error summary of one predictor on one task.
struct CellReport {
  std::string predictor;
  TaskId task = TaskId::kFreeFall;
  std::size_t episodes = 0;
  std::size_t condition_steps = 0;
  /// Squared error averaged over dimensions, then rollout steps, then episodes.
  double mse = 0.0;
  /// curve[h - 1] = e[h]: squared error at imagined step h averaged over
  /// dimensions, then episodes.
  std::vector<double> curve;

  bool operator==(const CellReport&) const = default;
};

/// Which dimensions of a layout are scored. When the layout observes pixels
/// only the pixel dimensions count, each gated by its visibility flag in
/// the ground truth; otherwise every dimension counts.
struct ScoringMask {
  std::vector<std::size_t> dims;
  std::vector<std::optional<std::size_t>> gate;  // parallel to dims

  static ScoringMask for_layout(const StateLayout& layout);
};

/// The single scoring path. Joins records to episodes by episode_id (every
/// episode needs exactly one record), checks condition_steps and shapes.
/// Steps where a masked episode has no visible scored dimension are left
/// out of that episode's averages.
/// Throws JoinError, ShapeMismatch, InvalidArgument (mixed tasks / empty).
CellReport score(std::span<const PredictionRecord> records, std::span<const Episode> episodes);

/// Runs `p` on every episode and scores the predictions.
CellReport evaluate(const Predictor& p, std::span<const Episode> episodes,
                    std::size_t condition_steps = kDefaultConditionSteps,
                    std::optional<std::size_t> rollout_steps = std::nullopt);

/// Predictions of `p`, one record per episode in episode order.
std::vector<PredictionRecord> predict_all(const Predictor& p, std::span<const Episode> episodes,
                                          std::size_t condition_steps = kDefaultConditionSteps,
                                          std::optional<std::size_t> rollout_steps = std::nullopt);

/// Scores prediction files produced elsewhere; same math as evaluate.
CellReport score_external(std::span<const std::filesystem::path> prediction_files,
                          std::span<const Episode> episodes);

struct CurvePoint {
  std::size_t horizon = 0;
  double error = 0.0;
};

std::vector<CurvePoint> horizon_curve(const CellReport& report);
std::string curve_csv(const CellReport& report);

/// Per-task error ratios against a reference predictor, each task then
/// divided by its largest ratio so the worst predictor scores exactly 1.
struct RadarTable {
  std::string reference;
  std::vector<TaskId> tasks;
  std::vector<std::string> predictors;
  std::vector<std::vector<double>> ratio;       // [task][predictor]
  std::vector<std::vector<double>> normalized;  // [task][predictor]
};

/// Needs one cell per (task, predictor) pair present in `cells`; throws
/// InvalidArgument for gaps or duplicates, ZeroReference when the reference
/// has zero error on a task.
RadarTable radar_ratios(std::span<const CellReport> cells, const std::string& reference);

}  // namespace wmbench
