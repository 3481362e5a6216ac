// Copyright 2026 The PSV Simulator Authors
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

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

using json = nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result cli(const std::string &args) {
  const std::string err_path = std::string(PSV_TEST_TMP) + "/cli_stderr.txt";
  const std::string cmd = std::string(PSV_CLI_PATH) + " " + args + " 2>" + err_path;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, "", ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err_path)};
}

TEST(Cli, DistSingletQuarterTable) {
  const auto r = cli("dist --scenario singlet --axes i=z,j=x");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, line;
  std::getline(in, header);
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string a, b;
    double p;
    fields >> a >> b >> p;
    EXPECT_NEAR(p, 0.25, 1e-12) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 4);
}

TEST(Cli, OrdersGhz) {
  const auto r = cli("orders --scenario ghz --json");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("orders").size(), 6u);
  EXPECT_LT(j.at("max_deviation").get<double>(), 1e-10);
}

TEST(Cli, CompareHk) {
  const auto r = cli("compare-hk --axes i=x,j=z");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("hk").get<double>(), 1.0);
  EXPECT_NEAR(j.at("psv").get<double>(), 0.5, 1e-12);
  const auto flag = cli("--compare-hk --axes i=x,j=z");
  ASSERT_EQ(flag.code, 0) << flag.err;
  EXPECT_EQ(flag.out, r.out);
}

TEST(Cli, AxisAnglePairs) {
  const auto r = cli("dist --scenario singlet --axes i=0,0,j=1.5707963267948966,0 --json");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  for (const auto &e : j.at("entries")) EXPECT_NEAR(e.at("probability").get<double>(), 0.25, 1e-12);
}

TEST(Cli, RunFixedOutcomes) {
  const auto r = cli("run --scenario singlet --axes i=z,j=z --outcomes a=+,b=\xE2\x88\x92 --json");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("outcomes"), json({"+", "-"}));
  EXPECT_NEAR(j.at("total_probability").get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j.at("steps").at(1).at("reduction"), false);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("dist --scenario singlet --axes i=w").code, 1);
  EXPECT_EQ(cli("dist --scenario nosuch").code, 3);
  EXPECT_EQ(cli("run --scenario singlet --order A,A").code, 1);
  EXPECT_EQ(cli("dist --bogus-flag").code, 1);
  EXPECT_EQ(cli("run --scenario singlet --axes i=z,j=z --outcomes A=+,B=+").code, 2);
  EXPECT_EQ(cli("diagram --scenario singlet --out /nonexistent/dir/x.svg").code, 3);
}

TEST(Cli, JsonErrors) {
  const auto r = cli("run --scenario singlet --axes i=z,j=z --outcomes A=+,B=+ --json");
  EXPECT_EQ(r.code, 2);
  const json j = json::parse(r.err);
  EXPECT_EQ(j.at("error"), "impossible_branch");
  EXPECT_FALSE(j.at("message").get<std::string>().empty());
}

TEST(Cli, SampleDeterministic) {
  const auto a = cli("sample --scenario ghz --samples 5000 --seed 11");
  const auto b = cli("sample --scenario ghz --samples 5000 --seed 11 --threads 4");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, cli("sample --scenario ghz --samples 5000 --seed 12").out);
}

TEST(Cli, ScenarioFileRoundTrip) {
  const std::string path = std::string(PSV_TEST_TMP) + "/cli_split.json";
  ASSERT_EQ(cli("scenario --scenario split --out " + path).code, 0);
  const auto from_file = cli("dist --scenario " + path + " --json");
  const auto builtin = cli("dist --scenario split --json");
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.out, builtin.out);
  EXPECT_EQ(cli("dist --scenario " + path + " --c 2").code, 1);
}

TEST(Cli, DimensionAndLightSpeed) {
  const auto r = cli("dist --scenario ghz --d 3 --c 1.2 --json");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(cli("diagram --scenario ghz --d 2").code, 1);
  EXPECT_EQ(cli("dist --scenario ghz --d 5").code, 1);
}

TEST(Cli, Diagram) {
  const auto svg = cli("diagram --scenario split --order C,B,A --outcomes A=fire,B=none,C=c1");
  ASSERT_EQ(svg.code, 0) << svg.err;
  EXPECT_NE(svg.out.find("<svg"), std::string::npos);
  const auto ascii = cli("diagram --scenario split --ascii --seed 3");
  ASSERT_EQ(ascii.code, 0) << ascii.err;
  EXPECT_EQ(ascii.out.find("<svg"), std::string::npos);
}

TEST(Cli, KernelSelection) {
  const auto scalar = cli("dist --scenario singlet --copies --axes i=x,j=z --kernels scalar --json");
  const auto any = cli("dist --scenario singlet --copies --axes i=x,j=z --json");
  ASSERT_EQ(scalar.code, 0) << scalar.err;
  const json a = json::parse(scalar.out), b = json::parse(any.out);
  ASSERT_EQ(a.at("entries").size(), b.at("entries").size());
  for (std::size_t i = 0; i < a.at("entries").size(); ++i) {
    EXPECT_NEAR(a["entries"][i]["probability"].get<double>(),
                b["entries"][i]["probability"].get<double>(), 1e-13);
  }
  EXPECT_EQ(cli("dist --kernels neon").code, 1);
}

}  // namespace
