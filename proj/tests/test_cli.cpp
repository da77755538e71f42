#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wmbench/cli/run.hpp"
#include "wmbench/episodes/dataset.hpp"
#include "wmbench/harness/report.hpp"

using namespace wmbench;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "wmbench");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("wmbench_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenWritesDatasetAndManifest) {
  const Result r = run({"gen", "--task", "free_fall", "--count", "10", "--seed", "3", "--out", path("ds")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Dataset d = read_dataset(path("ds"));
  EXPECT_EQ(d.episodes.size(), 10u);
  EXPECT_EQ(d.manifest.task, TaskId::kFreeFall);
  EXPECT_EQ(d.manifest.base_seed, 3u);
  EXPECT_EQ(d.episodes[0].states.rows(), 101u);
}

TEST_F(CliTest, EvalOracleIsZero) {
  ASSERT_EQ(run({"gen", "--task", "pendulum", "--count", "4", "--out", path("ds")}).code, 0);
  const Result r = run({"eval", "--data", path("ds"), "--predictor", "oracle", "--predictor", "zoh", "--out",
                        path("rep")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const EvalReport rep = read_report(path("rep/report.json"));
  ASSERT_EQ(rep.cells.size(), 2u);
  EXPECT_EQ(rep.cells[0].predictor, "oracle");
  EXPECT_EQ(rep.cells[0].mse, 0.0);
  EXPECT_GT(rep.cells[1].mse, 0.0);
  EXPECT_TRUE(fs::exists(path("rep/table.csv")));
}

TEST_F(CliTest, PredictThenEvalExternalMatchesBuiltIn) {
  ASSERT_EQ(run({"gen", "--task", "projectile", "--count", "3", "--out", path("ds")}).code, 0);
  ASSERT_EQ(run({"predict", "--data", path("ds"), "--predictor", "constvel", "--out", path("pred")}).code, 0);
  ASSERT_EQ(run({"eval", "--data", path("ds"), "--predictor", "constvel", "--out", path("a")}).code, 0);
  const Result r = run({"eval", "--data", path("ds"), "--predictions", path("pred"), "--out", path("b")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_report(path("a/report.json")).cells, read_report(path("b/report.json")).cells);
}

TEST_F(CliTest, FitLinearAndEvaluateModel) {
  ASSERT_EQ(run({"gen", "--task", "inclined_plane", "--count", "5", "--out", path("ds")}).code, 0);
  const Result fit = run({"fit", "--data", path("ds"), "--predictor", "linear", "--out", path("m.json")});
  ASSERT_EQ(fit.code, 0) << fit.err;
  const Result r = run({"eval", "--data", path("ds"), "--model", path("m.json"), "--out", path("rep")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_report(path("rep/report.json")).cells.at(0).predictor, "linear");
}

TEST_F(CliTest, RefusesToOverwrite) {
  const std::vector<std::string> gen{"gen", "--task", "free_fall", "--count", "2", "--out", path("ds")};
  ASSERT_EQ(run(gen).code, 0);
  const Result again = run(gen);
  EXPECT_EQ(again.code, cli::kExitValidation);
  EXPECT_NE(again.err.find("--overwrite"), std::string::npos);
  auto forced = gen;
  forced.push_back("--overwrite");
  EXPECT_EQ(run(forced).code, 0);
}

TEST_F(CliTest, ValidationErrors) {
  EXPECT_EQ(run({"gen", "--task", "warp_drive", "--out", path("x")}).code, cli::kExitValidation);
  EXPECT_EQ(run({"gen", "--task", "free_fall", "--range", "height=3:1", "--out", path("x")}).code,
            cli::kExitValidation);
  EXPECT_EQ(run({"gen", "--task", "free_fall", "--range", "mass=1:2", "--out", path("x")}).code,
            cli::kExitValidation);
  EXPECT_EQ(run({"gen", "--task", "free_fall"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitValidation);
}

TEST_F(CliTest, ConfigFile) {
  {
    std::ofstream f(path("good.toml"));
    f << "[gen]\ntask = \"free_fall\"\ncount = 3\n";
  }
  const Result ok = run({"--config", path("good.toml"), "gen", "--count", "2", "--out", path("ds")});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(read_dataset(path("ds")).episodes.size(), 2u);  // the flag wins
  {
    std::ofstream f(path("bad.toml"));
    f << "[gen]\ntask = \"free_fall\"\ncolour = 3\n";
  }
  EXPECT_EQ(run({"--config", path("bad.toml"), "gen", "--out", path("ds2")}).code, cli::kExitValidation);
}

TEST_F(CliTest, HelpListsUnitsAndDefaults) {
  const Result r = run({"gen", "--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[s]"), std::string::npos);
  EXPECT_NE(r.out.find("1000"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, CurveAndRadar) {
  ASSERT_EQ(run({"gen", "--task", "rolling", "--count", "2", "--out", path("ds")}).code, 0);
  ASSERT_EQ(run({"eval", "--data", path("ds"), "--predictor", "zoh", "--predictor", "constvel", "--out",
                 path("rep")})
                .code,
            0);
  const Result curve = run({"curve", "--report", path("rep/report.json"), "--predictor", "zoh"});
  ASSERT_EQ(curve.code, 0) << curve.err;
  EXPECT_NE(curve.out.find("horizon,mse\n1,"), std::string::npos) << curve.out;
  const Result radar = run({"radar", "--report", path("rep/report.json"), "--reference", "zoh"});
  ASSERT_EQ(radar.code, 0) << radar.err;
  EXPECT_EQ(radar.out.rfind("task,predictor,ratio,normalized\n", 0), 0u) << radar.out;
  EXPECT_EQ(run({"radar", "--report", path("rep/report.json"), "--reference", "linear"}).code,
            cli::kExitValidation);
}

TEST_F(CliTest, SelftestPrintsOneLinePerCheck) {
  const Result r = run({"selftest"});
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_NE(r.out.find("selftest"), std::string::npos);
}
