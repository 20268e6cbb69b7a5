// Copyright 2026 The wvpower Authors
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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(WVPOWER_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  Run r{-1, {}};
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

TEST(Cli, ExpectedWeights) {
  const auto r = run("expected-weights --n 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1,0.61111111111111116,11/18"), std::string::npos);
}

TEST(Cli, IndicesAsJson) {
  const auto r = run("indices --weights 0.5,0.3,0.2 --quota 0.55");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"coleman\": 0.375"), std::string::npos);
  EXPECT_NE(r.out.find("\"beta\""), std::string::npos);
}

TEST(Cli, ColemanAtUnanimity) {
  const auto r = run("coleman-curve --n 6 --quota 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1,coleman_inversion,0.015625,0,0"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("indices --weights 0.5,0.3,0.2 --quota 0.4").code, 2);
  EXPECT_EQ(run("weight-density --n 1 --k 1").code, 2);
  EXPECT_EQ(run("coleman-curve --n 10 --quota 0.7 --tolerance 1e-12 --max-frequency 40").code, 3);
  EXPECT_EQ(run("power-curve --n 31 --quota 0.7").code, 4);
}

TEST(Cli, RerunsAreByteIdentical) {
  const std::string args = "power-curve --n 5 --grid-points 20 --samples 3000 --seed 9";
  const auto a = run(args + " --threads 1");
  const auto b = run(args + " --threads 3");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CurveFeedsSplineFit) {
  const auto csv = fs::temp_directory_path() / "wvpower_cli_curve.csv";
  const auto r = run("power-curve --n 2 --samples 2000 --seed 4 -o " + csv.string());
  ASSERT_EQ(r.code, 0);
  const auto f = run("spline-fit --input " + csv.string() + " --series beta_1 --max-degree 2");
  EXPECT_EQ(f.code, 0);
  EXPECT_FALSE(f.out.empty());
  EXPECT_EQ(run("spline-fit --input " + csv.string()).code, 2);
  fs::remove(csv);
}

TEST(Cli, ConfigFile) {
  const auto ini = fs::temp_directory_path() / "wvpower_cli.ini";
  {
    std::ofstream f(ini);
    f << "[expected-weights]\nn=3\n";
  }
  const auto r = run("--config " + ini.string() + " expected-weights");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("11/18"), std::string::npos);
  fs::remove(ini);
}

}  // namespace
