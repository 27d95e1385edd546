// Copyright 2026 The procmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "procmech/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "procmech/error.h"
#include "procmech/io.h"

namespace procmech {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("procmech_cli_test_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string File(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int Run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return cli::Run(args, out_, err_);
  }

  std::string ReadFile(const std::string& name) {
    std::ifstream f(dir_ / name, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  std::string CeEnv() {
    return File("ce.json",
                R"({"family": "constant_elasticity", "alpha": 0.4, )"
                R"("gamma": 3, "n": 2})");
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, SolveAsymFindsScoreFloor) {
  ASSERT_EQ(Run({"solve-asym", "--env", CeEnv()}), cli::kExitOk) << err_.str();
  Json j = ParseJson(out_.str());
  EXPECT_EQ(j["regime"], "score_floor");
  EXPECT_NEAR(j["theta0"].get<double>(), 11.0 / 36.0, 1e-8);
  EXPECT_NEAR(j["bonus"].get<double>(), 125.0 / 648.0, 1e-8);
}

TEST_F(CliTest, SolveSymIsDeterministic) {
  std::string env = CeEnv();
  ASSERT_EQ(Run({"solve-sym", "--env", env, "--grid", "64"}), cli::kExitOk)
      << err_.str();
  std::string first = out_.str();
  Json j = ParseJson(first);
  EXPECT_NEAR(j["utility"].get<double>(), 4.0 / 15.0, 1e-9);
  EXPECT_EQ(j["metadata"]["score_anchor"].get<double>(), 0.0);
  ASSERT_EQ(Run({"solve-sym", "--env", env, "--grid", "64"}), cli::kExitOk);
  EXPECT_EQ(out_.str(), first);
}

TEST_F(CliTest, SimulateIsByteIdenticalAndWritesArtifacts) {
  std::string mech = File(
      "floor.json",
      R"({"kind": "score_floor", "env": {"family": "constant_elasticity", )"
      R"("alpha": 0.4, "gamma": 3, "n": 2}})");
  std::vector<std::string> args = {"simulate", "--mech", mech,  "--draws",
                                   "20000",    "--seed", "7",   "--out",
                                   (dir_ / "run").string()};
  ASSERT_EQ(Run(args), cli::kExitOk) << err_.str();
  std::string first = out_.str();
  std::string hist = ReadFile("run/histogram.csv");
  ASSERT_EQ(Run(args), cli::kExitOk);
  EXPECT_EQ(out_.str(), first);
  EXPECT_EQ(ReadFile("run/simulate.json"), first);
  EXPECT_EQ(ReadFile("run/histogram.csv"), hist);
  EXPECT_EQ(hist.substr(0, hist.find('\n')), "firm,bin_left,bin_right,count");
}

TEST_F(CliTest, VerifyExitCodes) {
  std::string floor = File(
      "floor.json",
      R"({"kind": "score_floor", "env": {"family": "constant_elasticity", )"
      R"("alpha": 0.4, "gamma": 3, "n": 2}})");
  EXPECT_EQ(Run({"verify", "--mech", floor, "--grid", "32"}), cli::kExitOk)
      << err_.str();
  EXPECT_TRUE(ParseJson(out_.str())["passed"].get<bool>());
  std::string bare = File(
      "bare.json",
      R"({"kind": "score_ceiling", "kickback": 0, "env": )"
      R"({"family": "constant_elasticity", "alpha": 0.5, "gamma": 1.5}})");
  EXPECT_EQ(Run({"verify", "--mech", bare, "--grid", "32"}),
            cli::kExitVerification);
  EXPECT_FALSE(ParseJson(out_.str())["passed"].get<bool>());
}

TEST_F(CliTest, RegimeMapCsv) {
  ASSERT_EQ(Run({"regime-map", "--gamma", "1.5:3:0.5", "--alpha",
                 "0.2:1.2:0.5"}),
            cli::kExitOk)
      << err_.str();
  std::string csv = out_.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "gamma,alpha,closed_form,solver,slack,agree");
  // 4 gammas x 3 alphas plus the header.
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
}

TEST_F(CliTest, EntryCsvAndJson) {
  std::string env = File(
      "quad.json",
      R"({"family": "separable_custom", "alpha": 0.3, "n": 5, )"
      R"("g": {"name": "power", "p": 2}})");
  ASSERT_EQ(Run({"entry", "--env", env, "--out", (dir_ / "e").string()}),
            cli::kExitOk)
      << err_.str();
  std::string csv = out_.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,utility,is_argmax");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  Json j = ParseJson(ReadFile("e/entry.json"));
  EXPECT_TRUE(j["hypothesis_ok"].get<bool>());
}

TEST_F(CliTest, SweepRows) {
  ASSERT_EQ(Run({"sweep", "--env", CeEnv(), "--param", "alpha", "--range",
                 "0.3:0.5:0.1"}),
            cli::kExitOk)
      << err_.str();
  std::string csv = out_.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "param,value,utility_sym,regime,theta0,utility_opt");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST_F(CliTest, ValidationErrorsExitTwoWithJson) {
  std::string unknown =
      File("unknown.json", R"({"family": "constant_elasticity", "alpah": 1})");
  EXPECT_EQ(Run({"solve-sym", "--env", unknown}), cli::kExitValidation);
  Json e = ParseJson(err_.str());
  EXPECT_EQ(e["error"], "UnknownKey");
  EXPECT_TRUE(e.contains("message"));

  std::string bad = File(
      "bad.json",
      R"({"family": "constant_elasticity", "alpha": 0.4, "gamma": 0.9})");
  EXPECT_EQ(Run({"solve-sym", "--env", bad}), cli::kExitValidation);
  EXPECT_EQ(ParseJson(err_.str())["error"], "InvalidParameter");

  std::string missing = File("missing.json", R"({"alpha": 0.4})");
  EXPECT_EQ(Run({"solve-sym", "--env", missing}), cli::kExitValidation);
  EXPECT_EQ(ParseJson(err_.str())["error"], "MissingField");

  EXPECT_EQ(Run({"solve-sym", "--env", (dir_ / "nope.json").string()}),
            cli::kExitValidation);
  EXPECT_EQ(Run({}), cli::kExitValidation);
  EXPECT_EQ(Run({"bogus"}), cli::kExitValidation);
  EXPECT_EQ(Run({"sweep", "--env", CeEnv(), "--param", "zeta", "--range",
                 "0:1:0.5"}),
            cli::kExitValidation);
}

TEST(CanonicalJsonTest, SortedKeysAndFullPrecision) {
  Json j = {{"b", 0.1}, {"a", {1.0, 2.5}}};
  EXPECT_EQ(CanonicalJson(j),
            "{\n  \"a\": [1, 2.5],\n  \"b\": 0.10000000000000001\n}\n");
  EXPECT_EQ(FormatDouble(1.0 / 3.0), "0.33333333333333331");
}

TEST(EnvironmentConfigTest, RoundTrip) {
  Json j = ParseJson(
      R"({"family": "PowerElasticity", "alpha": 0.3, "e_p": 1, "e_i": 2,)"
      R"( "delta": 0.5, "n": 3})");
  EnvironmentConfig c = ParseEnvironmentConfig(j);
  EXPECT_EQ(c.family, Family::kPowerElasticity);
  EXPECT_EQ(*c.n, 3);
  EnvironmentConfig back = ParseEnvironmentConfig(EnvironmentConfigJson(c));
  EXPECT_EQ(back.family, c.family);
  EXPECT_EQ(*back.delta, 0.5);
  EXPECT_EQ(*back.e_i, 2.0);
}

}  // namespace
}  // namespace procmech
