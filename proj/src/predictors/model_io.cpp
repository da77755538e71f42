#include "wmbench/predictors/model_io.hpp"

#include "wmbench/core/error.hpp"
#include "wmbench/predictors/baselines.hpp"

namespace wmbench {

namespace {

Json header(const char* kind, TaskId task) {
  Json j = Json::object();
  j["format_version"] = kModelFormatVersion;
  j["kind"] = kind;
  j["task"] = std::string(to_string(task));
  return j;
}

std::vector<double> reals(const Json& j, const char* key) {
  const Json& a = require(j, key);
  if (!a.is_array()) throw FormatError(std::string("model field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& v : a) {
    if (!v.is_number()) throw FormatError(std::string("model field '") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::size_t> sizes(const Json& j, const char* key) {
  const Json& a = require(j, key);
  if (!a.is_array()) throw FormatError(std::string("model field '") + key + "' must be an array");
  std::vector<std::size_t> out;
  for (const auto& v : a) {
    if (!v.is_number_unsigned()) throw FormatError(std::string("model field '") + key + "' must hold indices");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

Json normalizer_json(const Normalizer& z) {
  Json j = Json::object();
  j["mean"] = z.mean;
  j["scale"] = z.scale;
  return j;
}

Normalizer normalizer_from(const Json& j) {
  return {reals(j, "mean"), reals(j, "scale")};
}

}  // namespace

Json model_to_json(const LinearPredictor& model, TaskId task) {
  Json j = header("linear", task);
  j["state_dim"] = model.state_dim();
  j["action_dim"] = model.action_dim();
  j["weights"] = grid_to_json(model.weights());
  j["bias"] = model.bias();
  return j;
}

Json model_to_json(const NeuralDerivativePredictor& model, TaskId task) {
  Json j = header("neural", task);
  j["sizes"] = model.net().sizes();
  const auto p = model.net().parameters();
  j["parameters"] = std::vector<double>(p.begin(), p.end());
  j["input_stats"] = normalizer_json(model.input_stats());
  j["output_stats"] = normalizer_json(model.output_stats());
  j["quaternion_offsets"] = model.quaternion_offsets();
  return j;
}

LoadedModel model_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("model file must hold a JSON object");
  const Json& version = require(j, "format_version");
  if (!version.is_number_integer() || version.get<int>() != kModelFormatVersion) {
    throw FormatError("unsupported model format_version " + version.dump());
  }
  LoadedModel out;
  try {
    out.task = task_from_string(require(j, "task").get<std::string>());
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  const std::string kind = require(j, "kind").get<std::string>();
  try {
    if (kind == "linear") {
      const auto d = require(j, "state_dim").get<std::size_t>();
      const auto a = require(j, "action_dim").get<std::size_t>();
      Matrix w = grid_from_json(require(j, "weights"), d, "weights");
      if (w.rows() != d + a) throw FormatError("linear weights must have state_dim + action_dim rows");
      out.predictor = std::make_unique<LinearPredictor>(std::move(w), reals(j, "bias"));
    } else if (kind == "neural") {
      Mlp net(sizes(j, "sizes"));
      const auto p = reals(j, "parameters");
      if (p.size() != net.parameters().size()) throw FormatError("neural parameter count does not match sizes");
      std::copy(p.begin(), p.end(), net.parameters().begin());
      out.predictor = std::make_unique<NeuralDerivativePredictor>(
          std::move(net), normalizer_from(require(j, "input_stats")), normalizer_from(require(j, "output_stats")),
          sizes(j, "quaternion_offsets"));
    } else {
      throw FormatError("unknown model kind '" + kind + "'");
    }
  } catch (const ShapeMismatch& e) {
    throw FormatError(e.what());
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed model: ") + e.what());
  }
  return out;
}

void save_model(const Predictor& model, TaskId task, const std::filesystem::path& path) {
  Json j;
  if (const auto* lin = dynamic_cast<const LinearPredictor*>(&model)) {
    j = model_to_json(*lin, task);
  } else if (const auto* nn = dynamic_cast<const NeuralDerivativePredictor*>(&model)) {
    j = model_to_json(*nn, task);
  } else {
    throw InvalidArgument("predictor '" + model.name() + "' has no fitted state to save");
  }
  write_text_file(path, dump_canonical(j));
}

LoadedModel load_model(const std::filesystem::path& path) {
  return model_from_json(parse_json(read_text_file(path), path.string()));
}

std::unique_ptr<Predictor> make_builtin(const std::string& name) {
  if (name == "oracle") return std::make_unique<OraclePredictor>();
  if (name == "zoh") return std::make_unique<ZeroOrderHold>();
  if (name == "constvel") return std::make_unique<ConstantVelocity>();
  return nullptr;
}

}  // namespace wmbench
