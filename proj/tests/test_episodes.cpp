#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "wmbench/core/error.hpp"
#include "wmbench/episodes/dataset.hpp"
#include "wmbench/episodes/digest.hpp"
#include "wmbench/episodes/real_format.hpp"

using namespace wmbench;
namespace fs = std::filesystem;

namespace {

const fs::path kData = WMBENCH_TEST_DATA;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("wmbench_episodes_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

TEST(RealFormat, MatchesPythonRepr) {
  // Expected strings are Python's repr() of the same binary64 values.
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(1e-5), "1e-05");
  EXPECT_EQ(format_real(1e16), "1e+16");
  EXPECT_EQ(format_real(1.2345678901234568e17), "1.2345678901234568e+17");
  EXPECT_EQ(format_real(0.0001), "0.0001");
  EXPECT_EQ(format_real(0.00015), "0.00015");
  EXPECT_EQ(format_real(0.0), "0.0");
  EXPECT_EQ(format_real(-0.0), "-0.0");
  EXPECT_EQ(format_real(5e-324), "5e-324");
  EXPECT_EQ(format_real(1.7976931348623157e308), "1.7976931348623157e+308");
  EXPECT_EQ(format_real(2.0), "2.0");
  EXPECT_EQ(format_real(1e15), "1000000000000000.0");
  EXPECT_EQ(format_real(9.81), "9.81");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.3333333333333333");
  EXPECT_EQ(format_real(-2.5e-7), "-2.5e-07");
  EXPECT_EQ(format_real(123.456), "123.456");
  EXPECT_THROW(format_real(NAN), NonFinite);
  EXPECT_THROW(format_real(INFINITY), NonFinite);
}

TEST(RealFormat, RoundTripsRandomBits) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double v = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.below(200)) - 100);
    EXPECT_EQ(std::stod(format_real(v)), v);
  }
}

TEST(Digest, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(CanonicalJson, SortedKeysInlineArrays) {
  const Json j = {{"b", 1}, {"a", Json::array({0.5, 2})}, {"c", {{"z", true}}}};
  EXPECT_EQ(dump_canonical(j), "{\n  \"a\": [0.5, 2],\n  \"b\": 1,\n  \"c\": {\n    \"z\": true\n  }\n}\n");
}

TEST(Episode, RoundTripEveryTask) {
  for (TaskId id : all_tasks()) {
    const Episode e = generate_episode(TaskSpec::defaults(id), 3);
    const std::string text = serialize_episode(e);
    const Episode back = episode_from_json(parse_json(text, "memory"));
    EXPECT_EQ(back, e) << to_string(id);
    EXPECT_EQ(serialize_episode(back), text);
  }
}

TEST(Episode, ShapesAndNoReward) {
  const Episode e = generate_episode(TaskSpec::defaults(TaskId::kCircular), 5);
  EXPECT_EQ(e.states.rows(), 101u);
  EXPECT_EQ(e.actions.rows(), 100u);
  EXPECT_EQ(e.actions.cols(), 1u);
  const std::string text = serialize_episode(e);
  EXPECT_EQ(text.find("reward"), std::string::npos);
}

TEST(Episode, FileRoundTrip) {
  TempDir dir;
  const Episode e = generate_episode(TaskSpec::defaults(TaskId::kReprojection), 9);
  write_episode(e, dir.path() / "e.json");
  EXPECT_EQ(read_episode(dir.path() / "e.json"), e);
  EXPECT_EQ(e.metadata.at("keypoints"), 8.0);
}

TEST(Episode, TruncatedFileRejected) {
  TempDir dir;
  const std::string text = serialize_episode(generate_episode(TaskSpec::defaults(TaskId::kPendulum), 1));
  std::ofstream(dir.path() / "t.json") << text.substr(0, text.size() / 2);
  EXPECT_THROW(read_episode(dir.path() / "t.json"), FormatError);
}

TEST(Episode, TamperedContentRejected) {
  Json j = episode_to_json(generate_episode(TaskSpec::defaults(TaskId::kPendulum), 1));
  j["params"]["g"] = 9.8;
  EXPECT_THROW(episode_from_json(j), FormatError);
  j = episode_to_json(generate_episode(TaskSpec::defaults(TaskId::kPendulum), 1));
  j["format_version"] = 2;
  EXPECT_THROW(episode_from_json(j), FormatError);
  j = episode_to_json(generate_episode(TaskSpec::defaults(TaskId::kPendulum), 1));
  j["states"][3] = Json::array({0.1});
  EXPECT_THROW(episode_from_json(j), FormatError);
}

TEST(Episode, GoldenMinimalFile) {
  const Episode e = read_episode(kData / "minimal_episode.json");
  EXPECT_EQ(e.episode_id, "1e718faae6d0a3cc");
  EXPECT_EQ(e.task.id, TaskId::kFreeFall);
  EXPECT_EQ(e.states.rows(), 1u);
  EXPECT_EQ(e.states.cols(), 6u);
  EXPECT_EQ(e.actions.rows(), 0u);
  EXPECT_EQ(e.states(0, 2), 1.0);
}

TEST(Episode, IdIsContentDigest) {
  const TaskParams p{{"g", 9.81}, {"height", 1.0}, {"radius", 0.1}};
  // sha256("free_fall\n7\ng=9.81\nheight=1.0\nradius=0.1\n")[:16]
  EXPECT_EQ(compute_episode_id(TaskId::kFreeFall, 7, p), "1e718faae6d0a3cc");
}

TEST(Generate, EmptyBatch) { EXPECT_TRUE(generate(TaskSpec::defaults(TaskId::kFreeFall), 0, 1).empty()); }

TEST(Generate, Deterministic) {
  const TaskSpec spec = TaskSpec::defaults(TaskId::kElasticCollision);
  const auto a = generate(spec, 5, 77);
  const auto b = generate(spec, 5, 77, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(serialize_episode(a[i]), serialize_episode(b[i]));
}

TEST(Generate, FreeFallBatchReplays) {
  for (const auto& e : generate(TaskSpec::defaults(TaskId::kFreeFall), 100, 2)) {
    EXPECT_FALSE(first_inconsistent_transition(e).has_value());
  }
}

TEST(Generate, EveryTaskReplays) {
  for (TaskId id : all_tasks()) {
    for (const auto& e : generate(TaskSpec::defaults(id), 5, 4)) {
      EXPECT_FALSE(first_inconsistent_transition(e).has_value()) << to_string(id);
    }
  }
}

TEST(Generate, DetectsEditedTransition) {
  Episode e = generate_episode(TaskSpec::defaults(TaskId::kPendulum), 1);
  e.states(40, 0) += 1e-15;
  EXPECT_EQ(first_inconsistent_transition(e), std::optional<std::size_t>(39));
}

TEST(Dataset, OodSplit) {
  const TaskSpec spec = TaskSpec::defaults(TaskId::kBouncingBall);
  OodSplitConfig config;
  config.train_count = 20;
  config.eval_count = 20;
  const auto [train, eval] = split_ood(spec, {{"speed", {0.5, 1.5}}}, {{"speed", {2.0, 3.0}}}, config);
  for (const auto& e : train.episodes) EXPECT_LT(e.params.at("speed"), 1.5);
  for (const auto& e : eval.episodes) EXPECT_GE(e.params.at("speed"), 2.0);
  EXPECT_EQ(eval.manifest.param_ranges.at("speed"), (Range{2.0, 3.0}));
  EXPECT_EQ(eval.manifest.split, Split::kEval);
}

TEST(Dataset, IdenticalRangesInDistribution) {
  OodSplitConfig config;
  config.train_count = 3;
  config.eval_count = 3;
  const auto [train, eval] = split_ood(TaskSpec::defaults(TaskId::kPendulum), {}, {}, config);
  EXPECT_EQ(train.manifest.param_ranges, eval.manifest.param_ranges);
}

TEST(Dataset, OverlappingSeedsRejected) {
  OodSplitConfig config;
  config.train_seed = 5;
  config.eval_seed = 5;
  EXPECT_THROW(split_ood(TaskSpec::defaults(TaskId::kPendulum), {}, {}, config), InvalidArgument);
}

TEST(Dataset, BadRangeRejected) {
  OodSplitConfig config;
  EXPECT_THROW(split_ood(TaskSpec::defaults(TaskId::kPendulum), {{"length", {2, 1}}}, {}, config), InvalidRange);
}

TEST(Dataset, WriteReadVerifiesDigests) {
  TempDir dir;
  Dataset d = generate_dataset(TaskSpec::defaults(TaskId::kProjectile), 4, 3, Split::kTrain);
  write_dataset(d, dir.path(), false);
  const Dataset back = read_dataset(dir.path());
  EXPECT_EQ(back.manifest, d.manifest);
  EXPECT_EQ(back.episodes, d.episodes);
  for (const auto& entry : d.manifest.episodes) {
    EXPECT_EQ(entry.sha256, sha256_hex(read_text_file(dir.path() / entry.file)));
  }

  EXPECT_THROW(write_dataset(d, dir.path(), false), InvalidArgument);
  EXPECT_NO_THROW(write_dataset(d, dir.path(), true));

  std::ofstream(dir.path() / d.manifest.episodes[1].file, std::ios::app) << " ";
  EXPECT_THROW(read_dataset(dir.path()), FormatError);
}

TEST(Prediction, RoundTrip) {
  TempDir dir;
  PredictionRecord p{"00ff", "zoh", 10, Matrix(2, 3, {0.1, -0.0, 1e-300, 3, 4, 5})};
  write_prediction(p, dir.path() / "p.json");
  EXPECT_EQ(read_prediction(dir.path() / "p.json"), p);
}

TEST(Prediction, HandWrittenFileParses) {
  const PredictionRecord p = read_prediction(kData / "short_prediction.json");
  EXPECT_EQ(p.episode_id, "13c33884f44fe563");
  EXPECT_EQ(p.condition_steps, 1u);
  EXPECT_EQ(p.states.rows(), 2u);
}
