#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "wmbench/predictors/linear.hpp"
#include "wmbench/predictors/neural_derivative.hpp"

namespace wmbench {

inline constexpr int kModelFormatVersion = 1;

/// A fitted predictor together with the task it was fitted on.
struct LoadedModel {
  TaskId task = TaskId::kFreeFall;
  std::unique_ptr<Predictor> predictor;
};

Json model_to_json(const LinearPredictor& model, TaskId task);
Json model_to_json(const NeuralDerivativePredictor& model, TaskId task);
LoadedModel model_from_json(const Json& j);

/// Writes a fitted linear or neural model; throws InvalidArgument for
/// predictors that carry no fitted state.
void save_model(const Predictor& model, TaskId task, const std::filesystem::path& path);
/// Throws FormatError on malformed files or unknown model kinds.
LoadedModel load_model(const std::filesystem::path& path);

/// Parameter-free predictors by name: oracle, zoh, constvel.
/// Returns nullptr for any other name.
std::unique_ptr<Predictor> make_builtin(const std::string& name);

}  // namespace wmbench
