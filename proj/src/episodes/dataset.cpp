#include "wmbench/episodes/dataset.hpp"

#include <cstdio>
#include <set>

#include "wmbench/core/error.hpp"
#include "wmbench/episodes/digest.hpp"

namespace wmbench {

std::string_view to_string(Split split) { return split == Split::kTrain ? "train" : "eval"; }

Split split_from_string(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "eval") return Split::kEval;
  throw InvalidArgument("unknown split '" + std::string(name) + "'");
}

Dataset generate_dataset(const TaskSpec& spec, std::size_t count, std::uint64_t base_seed, Split split,
                         unsigned jobs) {
  Dataset d;
  d.episodes = generate(spec, count, base_seed, jobs, &d.manifest.diagnostics);
  d.manifest.task = spec.id;
  d.manifest.dt = spec.dt;
  d.manifest.steps = spec.horizon;
  d.manifest.count = d.episodes.size();
  d.manifest.split = split;
  d.manifest.param_ranges = spec.param_ranges;
  d.manifest.base_seed = base_seed;
  for (const auto& e : d.episodes) d.manifest.episodes.push_back({"", e.episode_id, e.seed, ""});
  return d;
}

std::pair<Dataset, Dataset> split_ood(const TaskSpec& spec, const RangeMap& train_ranges,
                                      const RangeMap& eval_ranges, const OodSplitConfig& config) {
  TaskSpec train = spec;
  TaskSpec eval = spec;
  for (const auto& [name, r] : train_ranges) train.set_range(name, r);
  for (const auto& [name, r] : eval_ranges) eval.set_range(name, r);
  train.validate();
  eval.validate();

  std::set<std::uint64_t> train_seeds;
  for (std::size_t i = 0; i < config.train_count; ++i) train_seeds.insert(Rng::derive_seed(config.train_seed, i));
  for (std::size_t i = 0; i < config.eval_count; ++i) {
    if (train_seeds.contains(Rng::derive_seed(config.eval_seed, i))) {
      throw InvalidArgument("train and eval splits share episode seeds; choose a different eval seed");
    }
  }
  return {generate_dataset(train, config.train_count, config.train_seed, Split::kTrain, config.jobs),
          generate_dataset(eval, config.eval_count, config.eval_seed, Split::kEval, config.jobs)};
}

Json manifest_to_json(const DatasetManifest& m) {
  Json ranges = Json::object();
  for (const auto& [name, r] : m.param_ranges) ranges[name] = Json::array({r.lo, r.hi});
  Json episodes = Json::array();
  for (const auto& e : m.episodes) {
    episodes.push_back({{"file", e.file}, {"episode_id", e.episode_id}, {"seed", e.seed}, {"sha256", e.sha256}});
  }
  return {{"format_version", m.format_version},
          {"task", std::string(to_string(m.task))},
          {"dt", m.dt},
          {"steps", m.steps},
          {"count", m.count},
          {"split", std::string(to_string(m.split))},
          {"param_ranges", ranges},
          {"base_seed", m.base_seed},
          {"episodes", episodes},
          {"diagnostics", m.diagnostics}};
}

DatasetManifest manifest_from_json(const Json& j) {
  DatasetManifest m;
  try {
    m.format_version = require(j, "format_version").get<int>();
    if (m.format_version != kFormatVersion) throw FormatError("unsupported manifest format_version");
    m.task = task_from_string(require(j, "task").get<std::string>());
    m.dt = require_real(j, "dt");
    m.steps = require(j, "steps").get<std::size_t>();
    m.count = require(j, "count").get<std::size_t>();
    m.split = split_from_string(require(j, "split").get<std::string>());
    for (const auto& [name, r] : require(j, "param_ranges").items()) {
      m.param_ranges[name] = {r.at(0).get<double>(), r.at(1).get<double>()};
    }
    m.base_seed = require(j, "base_seed").get<std::uint64_t>();
    for (const auto& e : require(j, "episodes")) {
      m.episodes.push_back({require(e, "file").get<std::string>(), require(e, "episode_id").get<std::string>(),
                            require(e, "seed").get<std::uint64_t>(), require(e, "sha256").get<std::string>()});
    }
    if (j.contains("diagnostics")) m.diagnostics = j["diagnostics"].get<std::vector<std::string>>();
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  } catch (const Json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
  if (m.episodes.size() != m.count) throw FormatError("manifest count does not match its episode list");
  return m;
}

void write_dataset(Dataset& dataset, const std::filesystem::path& dir, bool overwrite) {
  const auto manifest_path = dir / kManifestFile;
  if (std::filesystem::exists(manifest_path) && !overwrite) {
    throw InvalidArgument(manifest_path.string() + " exists; pass --overwrite to replace it");
  }
  std::filesystem::create_directories(dir);
  auto& m = dataset.manifest;
  m.episodes.clear();
  for (std::size_t i = 0; i < dataset.episodes.size(); ++i) {
    const Episode& e = dataset.episodes[i];
    char name[64];
    std::snprintf(name, sizeof name, "episode_%06zu_%s.json", i, e.episode_id.c_str());
    const std::string text = serialize_episode(e);
    write_text_file(dir / name, text);
    m.episodes.push_back({name, e.episode_id, e.seed, sha256_hex(text)});
  }
  m.count = dataset.episodes.size();
  write_text_file(manifest_path, dump_canonical(manifest_to_json(m)));
}

Dataset read_dataset(const std::filesystem::path& dir) {
  Dataset d;
  const auto manifest_path = dir / kManifestFile;
  d.manifest = manifest_from_json(parse_json(read_text_file(manifest_path), manifest_path.string()));
  for (const auto& entry : d.manifest.episodes) {
    const auto path = dir / entry.file;
    const std::string text = read_text_file(path);
    if (sha256_hex(text) != entry.sha256) throw FormatError("digest mismatch for " + path.string());
    Episode e;
    try {
      e = episode_from_json(parse_json(text, path.string()));
    } catch (const Json::exception& err) {
      throw FormatError(path.string() + ": " + err.what());
    }
    if (e.episode_id != entry.episode_id) throw FormatError("manifest id mismatch for " + path.string());
    if (e.task.id != d.manifest.task) throw FormatError(path.string() + " belongs to a different task");
    d.episodes.push_back(std::move(e));
  }
  return d;
}

}  // namespace wmbench
