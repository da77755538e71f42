#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "wmbench/episodes/episode.hpp"

namespace wmbench {

enum class Split { kTrain, kEval };

std::string_view to_string(Split split);
Split split_from_string(std::string_view name);

struct ManifestEntry {
  std::string file;
  std::string episode_id;
  std::uint64_t seed = 0;
  std::string sha256;  // digest of the file bytes

  bool operator==(const ManifestEntry&) const = default;
};

/// Index of one generated dataset. Ranges are recorded verbatim so that
/// train/eval distribution shifts stay auditable.
struct DatasetManifest {
  int format_version = kFormatVersion;
  TaskId task = TaskId::kFreeFall;
  double dt = kDefaultDt;
  std::size_t steps = kDefaultHorizon;
  std::size_t count = 0;
  Split split = Split::kTrain;
  RangeMap param_ranges;
  std::uint64_t base_seed = 0;
  std::vector<ManifestEntry> episodes;
  std::vector<std::string> diagnostics;

  bool operator==(const DatasetManifest&) const = default;
};

struct Dataset {
  DatasetManifest manifest;
  std::vector<Episode> episodes;
};

inline constexpr const char* kManifestFile = "manifest.json";

Dataset generate_dataset(const TaskSpec& spec, std::size_t count, std::uint64_t base_seed, Split split,
                         unsigned jobs = 1);

struct OodSplitConfig {
  std::size_t train_count = 1000;
  std::size_t eval_count = 100;
  std::uint64_t train_seed = 0;
  std::uint64_t eval_seed = 1;
  unsigned jobs = 1;
};

/// Train and eval datasets over the same task with separately overridden
/// parameter ranges (eval ranges may lie outside the train ranges).
/// Throws InvalidRange for bad ranges and InvalidArgument when the two
/// seed streams share an episode seed.
std::pair<Dataset, Dataset> split_ood(const TaskSpec& spec, const RangeMap& train_ranges,
                                      const RangeMap& eval_ranges, const OodSplitConfig& config);

/// Writes episode files and manifest.json into `dir`, filling file names and
/// digests. Refuses to replace an existing manifest unless `overwrite`.
void write_dataset(Dataset& dataset, const std::filesystem::path& dir, bool overwrite);

/// Reads a dataset and verifies every file digest; throws FormatError.
Dataset read_dataset(const std::filesystem::path& dir);

Json manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const Json& j);

}  // namespace wmbench
