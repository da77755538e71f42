#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wmbench/core/matrix.hpp"
#include "wmbench/episodes/canonical_json.hpp"
#include "wmbench/tasks/task.hpp"

namespace wmbench {

inline constexpr int kFormatVersion = 1;

/// One seeded rollout of a task: (horizon + 1) states and horizon actions.
/// There is deliberately no reward anywhere in the record.
struct Episode {
  std::string episode_id;
  TaskSpec task;
  TaskParams params;
  std::uint64_t seed = 0;
  StateLayout state_layout;
  ActionLayout action_layout;
  Matrix states;   // (T + 1) x D
  Matrix actions;  // T x A
  std::map<std::string, double> metadata;

  std::size_t steps() const noexcept { return actions.rows(); }
  bool operator==(const Episode&) const = default;
};

/// First 16 hex digits of SHA-256 over the task name, seed and the
/// sorted name=value parameter list (values in round-trip decimal).
std::string compute_episode_id(TaskId task, std::uint64_t seed, const TaskParams& params);

/// Simulates one episode from `seed`: parameters and initial state first,
/// then one action draw per step for actuated tasks.
Episode generate_episode(const TaskSpec& spec, std::uint64_t seed);

/// Episode i uses seed Rng::derive_seed(base_seed, i). A task error aborts
/// only that episode; its diagnostic is appended to `diagnostics`.
/// Episodes are generated on `jobs` threads and returned in index order.
std::vector<Episode> generate(const TaskSpec& spec, std::size_t count, std::uint64_t base_seed,
                              unsigned jobs = 1, std::vector<std::string>* diagnostics = nullptr);

/// Index of the first stored transition that the simulator does not
/// reproduce bit-exactly, or nullopt when every transition matches.
std::optional<std::size_t> first_inconsistent_transition(const Episode& e);

Json episode_to_json(const Episode& e);
/// Validates version, shapes, ids and finiteness; throws FormatError.
Episode episode_from_json(const Json& j);

std::string serialize_episode(const Episode& e);
void write_episode(const Episode& e, const std::filesystem::path& path);
Episode read_episode(const std::filesystem::path& path);

Json layout_to_json(const StateLayout& layout);
StateLayout layout_from_json(const Json& j);
Json task_spec_to_json(const TaskSpec& spec);
TaskSpec task_spec_from_json(const Json& j);

Json grid_to_json(const Matrix& m);
/// `cols` is enforced for every row (needed when the grid has no rows).
Matrix grid_from_json(const Json& j, std::size_t cols, const char* what);

/// A predictor's imagined states for the rollout window of one episode.
struct PredictionRecord {
  std::string episode_id;
  std::string predictor;
  std::size_t condition_steps = 0;
  Matrix states;  // (T - condition_steps) x D

  bool operator==(const PredictionRecord&) const = default;
};

Json prediction_to_json(const PredictionRecord& p);
PredictionRecord prediction_from_json(const Json& j);
void write_prediction(const PredictionRecord& p, const std::filesystem::path& path);
PredictionRecord read_prediction(const std::filesystem::path& path);

}  // namespace wmbench
