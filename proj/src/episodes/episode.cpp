#include "wmbench/episodes/episode.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "wmbench/core/error.hpp"
#include "wmbench/episodes/digest.hpp"
#include "wmbench/episodes/real_format.hpp"

namespace wmbench {

std::string compute_episode_id(TaskId task, std::uint64_t seed, const TaskParams& params) {
  std::string text = std::string(to_string(task)) + "\n" + std::to_string(seed) + "\n";
  for (const auto& [name, value] : params) text += name + "=" + format_real(value) + "\n";
  return sha256_hex(text).substr(0, 16);
}

Episode generate_episode(const TaskSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  auto init = sample_init(spec, rng);

  Episode e;
  e.task = spec;
  e.params = std::move(init.params);
  e.seed = seed;
  e.episode_id = compute_episode_id(spec.id, seed, e.params);
  e.state_layout = state_layout(spec.id);
  e.action_layout = action_layout(spec.id);
  e.metadata = task_metadata(spec.id, e.params);
  e.states = Matrix(0, init.state.size());
  e.actions = Matrix(0, spec.action_dim);

  StateVector state = std::move(init.state);
  std::vector<double> action;
  e.states.append_row(state);
  for (std::size_t t = 0; t < spec.horizon; ++t) {
    action = sample_action(spec, rng, action);
    state = step(spec, e.params, state, action);
    e.actions.append_row(action);
    e.states.append_row(state);
  }
  return e;
}

std::vector<Episode> generate(const TaskSpec& spec, std::size_t count, std::uint64_t base_seed,
                              unsigned jobs, std::vector<std::string>* diagnostics) {
  spec.validate();
  std::vector<std::optional<Episode>> slots(count);
  std::vector<std::string> errors(count);
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      const std::uint64_t seed = Rng::derive_seed(base_seed, i);
      try {
        slots[i] = generate_episode(spec, seed);
      } catch (const Error& err) {
        errors[i] = "episode " + std::to_string(i) + " (seed " + std::to_string(seed) + "): " + err.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<Episode> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (slots[i]) {
      out.push_back(std::move(*slots[i]));
    } else if (diagnostics) {
      diagnostics->push_back(errors[i]);
    }
  }
  return out;
}

std::optional<std::size_t> first_inconsistent_transition(const Episode& e) {
  for (std::size_t t = 0; t < e.steps(); ++t) {
    const StateVector next = step(e.task, e.params, e.states.row(t), e.actions.row(t));
    const auto stored = e.states.row(t + 1);
    if (!std::equal(next.begin(), next.end(), stored.begin(), stored.end())) return t;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- layouts

Json layout_to_json(const StateLayout& layout) {
  Json dims = Json::array();
  for (const auto& d : layout.dims) {
    Json dim = {{"name", d.name}, {"unit", d.unit}, {"role", std::string(to_string(d.role))}};
    if (!d.rate.empty()) dim["rate"] = d.rate;
    if (!d.mask.empty()) dim["mask"] = d.mask;
    dims.push_back(std::move(dim));
  }
  Json blocks = Json::array();
  for (const auto& b : layout.quaternion_blocks) {
    Json block = {{"offset", b.offset}};
    if (b.rate_offset) block["rate_offset"] = *b.rate_offset;
    blocks.push_back(std::move(block));
  }
  return {{"dims", dims}, {"quaternion_blocks", blocks}};
}

StateLayout layout_from_json(const Json& j) {
  StateLayout layout;
  for (const auto& d : require(j, "dims")) {
    DimSpec dim;
    dim.name = require(d, "name").get<std::string>();
    dim.unit = require(d, "unit").get<std::string>();
    dim.role = dim_role_from_string(require(d, "role").get<std::string>());
    dim.rate = d.value("rate", "");
    dim.mask = d.value("mask", "");
    layout.dims.push_back(std::move(dim));
  }
  for (const auto& b : require(j, "quaternion_blocks")) {
    QuaternionBlock block;
    block.offset = require(b, "offset").get<std::size_t>();
    if (b.contains("rate_offset")) block.rate_offset = b["rate_offset"].get<std::size_t>();
    if (block.offset + 4 > layout.size()) throw FormatError("quaternion block beyond the state layout");
    layout.quaternion_blocks.push_back(block);
  }
  return layout;
}

Json task_spec_to_json(const TaskSpec& spec) {
  Json ranges = Json::object();
  for (const auto& [name, r] : spec.param_ranges) ranges[name] = Json::array({r.lo, r.hi});
  return {{"id", std::string(to_string(spec.id))},
          {"dt", spec.dt},
          {"horizon", spec.horizon},
          {"param_ranges", ranges},
          {"action_dim", spec.action_dim},
          {"action_scale", spec.action_scale}};
}

TaskSpec task_spec_from_json(const Json& j) {
  TaskSpec spec;
  try {
    spec.id = task_from_string(require(j, "id").get<std::string>());
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  spec.dt = require_real(j, "dt");
  spec.horizon = require(j, "horizon").get<std::size_t>();
  for (const auto& [name, r] : require(j, "param_ranges").items()) {
    if (!r.is_array() || r.size() != 2) throw FormatError("range '" + name + "' must be [lo, hi]");
    spec.param_ranges[name] = {r[0].get<double>(), r[1].get<double>()};
  }
  spec.action_dim = require(j, "action_dim").get<std::size_t>();
  spec.action_scale = require(j, "action_scale").get<std::vector<double>>();
  try {
    spec.validate();
  } catch (const Error& e) {
    throw FormatError(std::string("invalid task spec: ") + e.what());
  }
  return spec;
}

Json grid_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(Json(std::vector<double>(row.begin(), row.end())));
  }
  return rows;
}

Matrix grid_from_json(const Json& j, std::size_t cols, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be a list of rows");
  Matrix m(0, cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      throw FormatError(std::string(what) + " row " + std::to_string(r) + " has " +
                        std::to_string(row.is_array() ? row.size() : 0) + " values, expected " +
                        std::to_string(cols));
    }
    std::vector<double> values;
    values.reserve(cols);
    for (const auto& v : row) {
      if (!v.is_number()) throw FormatError(std::string(what) + " holds a non-numeric value");
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw FormatError(std::string(what) + " holds a non-finite value");
      values.push_back(x);
    }
    m.append_row(values);
  }
  return m;
}

// --------------------------------------------------------------- episodes

Json episode_to_json(const Episode& e) {
  Json params = Json::object();
  for (const auto& [k, v] : e.params) params[k] = v;
  Json metadata = Json::object();
  for (const auto& [k, v] : e.metadata) metadata[k] = v;
  Json actions = Json::array();
  for (const auto& a : e.action_layout) actions.push_back({{"name", a.name}, {"unit", a.unit}, {"scale", a.scale}});
  return {{"format_version", kFormatVersion},
          {"episode_id", e.episode_id},
          {"task", std::string(to_string(e.task.id))},
          {"task_spec", task_spec_to_json(e.task)},
          {"dt", e.task.dt},
          {"seed", e.seed},
          {"params", params},
          {"state_layout", layout_to_json(e.state_layout)},
          {"action_layout", actions},
          {"states", grid_to_json(e.states)},
          {"actions", grid_to_json(e.actions)},
          {"metadata", metadata}};
}

Episode episode_from_json(const Json& j) {
  const Json& version = require(j, "format_version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    throw FormatError("unsupported format_version " + version.dump());
  }
  Episode e;
  e.task = task_spec_from_json(require(j, "task_spec"));
  if (require(j, "task").get<std::string>() != to_string(e.task.id)) {
    throw FormatError("task name disagrees with task_spec");
  }
  if (require_real(j, "dt") != e.task.dt) throw FormatError("dt disagrees with task_spec");
  e.seed = require(j, "seed").get<std::uint64_t>();
  for (const auto& [k, v] : require(j, "params").items()) {
    if (!v.is_number()) throw FormatError("parameter '" + k + "' is not a number");
    e.params[k] = v.get<double>();
  }
  e.state_layout = layout_from_json(require(j, "state_layout"));
  for (const auto& a : require(j, "action_layout")) {
    e.action_layout.push_back(
        {require(a, "name").get<std::string>(), require(a, "unit").get<std::string>(), require_real(a, "scale")});
  }
  if (e.action_layout.size() != e.task.action_dim) throw FormatError("action_layout size != action_dim");
  for (const auto& [k, v] : require(j, "metadata").items()) e.metadata[k] = v.get<double>();

  e.states = grid_from_json(require(j, "states"), e.state_layout.size(), "states");
  e.actions = grid_from_json(require(j, "actions"), e.task.action_dim, "actions");
  if (e.states.rows() == 0) throw FormatError("episode has no states");
  if (e.states.rows() != e.actions.rows() + 1) {
    throw FormatError("episode has " + std::to_string(e.states.rows()) + " states but " +
                      std::to_string(e.actions.rows()) + " actions");
  }

  e.episode_id = require(j, "episode_id").get<std::string>();
  const std::string expected = compute_episode_id(e.task.id, e.seed, e.params);
  if (e.episode_id != expected) {
    throw FormatError("episode_id " + e.episode_id + " does not match its content digest " + expected);
  }
  return e;
}

std::string serialize_episode(const Episode& e) { return dump_canonical(episode_to_json(e)); }

void write_episode(const Episode& e, const std::filesystem::path& path) {
  write_text_file(path, serialize_episode(e));
}

Episode read_episode(const std::filesystem::path& path) {
  try {
    return episode_from_json(parse_json(read_text_file(path), path.string()));
  } catch (const Json::exception& err) {
    throw FormatError(path.string() + ": " + err.what());
  }
}

// ------------------------------------------------------------ predictions

Json prediction_to_json(const PredictionRecord& p) {
  return {{"format_version", kFormatVersion},
          {"episode_id", p.episode_id},
          {"predictor", p.predictor},
          {"condition_steps", p.condition_steps},
          {"states", grid_to_json(p.states)}};
}

PredictionRecord prediction_from_json(const Json& j) {
  const Json& version = require(j, "format_version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    throw FormatError("unsupported format_version " + version.dump());
  }
  PredictionRecord p;
  p.episode_id = require(j, "episode_id").get<std::string>();
  p.predictor = require(j, "predictor").get<std::string>();
  p.condition_steps = require(j, "condition_steps").get<std::size_t>();
  if (p.condition_steps < 1) throw FormatError("condition_steps must be at least 1");
  const Json& states = require(j, "states");
  const std::size_t cols = states.empty() ? 0 : states[0].size();
  p.states = grid_from_json(states, cols, "states");
  return p;
}

void write_prediction(const PredictionRecord& p, const std::filesystem::path& path) {
  write_text_file(path, dump_canonical(prediction_to_json(p)));
}

PredictionRecord read_prediction(const std::filesystem::path& path) {
  try {
    return prediction_from_json(parse_json(read_text_file(path), path.string()));
  } catch (const Json::exception& err) {
    throw FormatError(path.string() + ": " + err.what());
  }
}

}  // namespace wmbench
