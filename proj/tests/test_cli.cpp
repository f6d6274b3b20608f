// Copyright 2026 The graphmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "graphmix/graph.hpp"
#include "graphmix/graphon.hpp"

namespace fs = std::filesystem;
using graphmix::Rng;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("graphmix_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliResult run(const std::string& args) {
    const auto out = dir_ / "stdout.txt";
    const auto err = dir_ / "stderr.txt";
    const std::string cmd = std::string("\"") + GRAPHMIX_CLI + "\" " + args + " >\"" +
                            out.string() + "\" 2>\"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string fixture(const std::string& name) {
    return std::string(GRAPHMIX_FIXTURES) + "/" + name;
  }
  static std::string config(const std::string& name) {
    return std::string(GRAPHMIX_CONFIGS) + "/" + name;
  }

  fs::path dir_;
};

bool single_line(const std::string& s) {
  return !s.empty() && s.find('\n') == s.size() - 1;
}

}  // namespace

TEST_F(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("estimate --help").code, 0);
  auto r = run("");
  EXPECT_EQ(r.code, 2);
  r = run("estimate --input x --bogus");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(single_line(r.err)) << r.err;
  r = run("estimate --input x --format yaml");
  EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, GenerateIsDeterministicUnderSeed) {
  const std::string args = "--config " + config("linear_sequence.json");
  ASSERT_EQ(run(args + " --seed 17 --out " + path("a") + " generate").code, 0);
  ASSERT_EQ(run(args + " --seed 17 --out " + path("b") + " generate").code, 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "a")) {
    ++files;
    EXPECT_EQ(slurp(e.path()), slurp(dir_ / "b" / e.path().filename())) << e.path();
  }
  EXPECT_TRUE(fs::exists(dir_ / "a" / "g_0001.edges"));
  EXPECT_TRUE(fs::exists(dir_ / "a" / "g_0001.origin.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "a" / "density.csv"));
  EXPECT_GE(files, 3u);
  ASSERT_EQ(run(args + " --seed 18 --out " + path("c") + " generate").code, 0);
  EXPECT_NE(slurp(dir_ / "a" / "g_0003.edges"), slurp(dir_ / "c" / "g_0003.edges"));
}

TEST_F(Cli, SqrtGrowthConfigDensityFalls) {
  const auto r = run("--config " + config("sqrt_growth_sequence.json") + " --out " + path("b1") +
                     " --format csv generate");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(slurp(dir_ / "b1" / "density.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "step,n_d,n_s,n,m,density");
  std::vector<double> density;
  while (std::getline(csv, line)) density.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  ASSERT_GE(density.size(), 5u);
  EXPECT_LT(density.back(), density.front());
}

TEST_F(Cli, GenerateRejectsBadGraphon) {
  const auto r = run("--out " + path("x") +
                     " generate --graphon-w wobbly --partition-u mass:[1]");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(single_line(r.err)) << r.err;
  EXPECT_NE(r.err.find("wobbly"), std::string::npos);
}

TEST_F(Cli, EstimateStarForestWithNoise) {
  const auto r = run("estimate --input " + fixture("star_forest_plus_noise.edges") +
                     " --plot-data " + path("plot.csv"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["k_hat"], 3);
  EXPECT_NEAR(j["p_hat"][0].get<double>(), 0.5, 0.02);
  EXPECT_NEAR(j["p_hat"][1].get<double>(), 1.0 / 3, 0.02);
  EXPECT_NEAR(j["p_hat"][2].get<double>(), 1.0 / 6, 0.02);
  const auto plot = slurp(dir_ / "plot.csv");
  EXPECT_EQ(plot.rfind("series,x,y\n", 0), 0u);
  EXPECT_NE(plot.find("reference,"), std::string::npos);
}

TEST_F(Cli, EstimateDenseOnlyFallsBackToInfiniteWithWarning) {
  Rng rng(3);
  std::ofstream(path("dense.edges")) << [&] {
    std::ostringstream os;
    graphmix::write_edge_list(os, graphmix::sample_w_random_graph(
                                      graphmix::exp_sum_graphon(), 300, rng));
    return os.str();
  }();
  const auto r = run("estimate --mode auto --input " + path("dense.edges"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["mode"], "infinite");
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST_F(Cli, EstimateErrorsHaveDistinctCodes) {
  std::ofstream(path("empty.edges")) << "";
  EXPECT_EQ(run("estimate --input " + path("empty.edges")).code, 2);
  EXPECT_EQ(run("estimate --input " + path("missing.edges")).code, 2);
  std::ofstream(path("bad.edges")) << "n 3\n0 x\n";
  const auto r = run("estimate --input " + path("bad.edges"));
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(single_line(r.err)) << r.err;
  std::ofstream(path("edgeless.edges")) << "n 4\n";
  EXPECT_EQ(run("estimate --input " + path("edgeless.edges")).code, 3);
}

TEST_F(Cli, PredictFromGraphFiles) {
  ASSERT_EQ(run("--config " + config("linear_sequence.json") + " --out " + path("g") +
                " generate").code, 0);
  const auto r = run("predict --train " + path("g/g_0004.edges") + " --test " +
                     path("g/g_0006.edges") + " --k 5");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["actual"].size(), 5u);
  EXPECT_LT(j["mape_proposed"].get<double>(), j["mape_baseline"].get<double>());
}

TEST_F(Cli, PredictFromEvents) {
  const auto r = run("--out " + path("eval") + " predict --events " +
                     fixture("mixture_events.txt") +
                     " --train-times 3,4,5 --horizons 0,2,3 --k 10");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["summary"].size(), 9u);
  EXPECT_LT(j["mean_mape_proposed"].get<double>(), j["mean_mape_baseline"].get<double>());
  EXPECT_EQ(slurp(dir_ / "eval" / "predictions.csv").rfind(
                "train_t,horizon,rank,actual,predicted_proposed,predicted_baseline\n", 0),
            0u);
  EXPECT_TRUE(fs::exists(dir_ / "eval" / "summary.csv"));
  EXPECT_EQ(run("predict --events " + fixture("mixture_events.txt")).code, 2);
}

TEST_F(Cli, ExperimentSuites) {
  EXPECT_EQ(run("experiment --suite table1:nothing").code, 2);
  const auto r = run("--scale 0.1 --seed 4 --format csv experiment --suite table1:finiteU "
                     "--replicates 2 --experiment experiment2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("suite,experiment,", 0), 0u);
  EXPECT_NE(r.out.find("table1:finiteU,experiment2,"), std::string::npos);
  const auto again = run("--scale 0.1 --seed 4 --format csv experiment --suite "
                         "table1:finiteU --replicates 2 --experiment experiment2");
  EXPECT_EQ(r.out, again.out);
}

TEST_F(Cli, IngestSnapshotsAndRejects) {
  const auto r = run("--out " + path("snap") + " ingest --input " +
                     fixture("tiny_events.csv") + " --snapshots 0,3 --normalized " +
                     path("clean.txt"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["events"], 5);
  EXPECT_EQ(j["nodes"], 5);
  EXPECT_EQ(j["snapshots"][1]["edges"], 4);
  EXPECT_EQ(slurp(dir_ / "snap" / "snapshot_0.edges"), "n 0\n");
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(slurp(dir_ / "clean.txt"), slurp(fixture("tiny_events.txt")).substr(8));

  std::ofstream(path("junk.txt")) << "1 2 3\n4 4 1\n5 6 x\n";
  EXPECT_EQ(run("ingest --input " + path("junk.txt")).code, 3);
}
