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

#include <fstream>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "psv/diagram.hpp"
#include "psv/errors.hpp"
#include "psv/scenarios.hpp"

namespace psv::diagram {
namespace {

std::size_t count_class(const std::string &svg, const std::string &cls) {
  const std::regex re("<[a-z]+ class=\"" + cls + "\"");
  return static_cast<std::size_t>(
      std::distance(std::sregex_iterator(svg.begin(), svg.end(), re), std::sregex_iterator()));
}

std::string read(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

engine::RunRecord singlet_run(const engine::Scenario &s) {
  return engine::run(s, {"A", "B"}, {{"A", "+"}, {"B", "-"}});
}

engine::RunRecord split_cba(const engine::Scenario &s) {
  return engine::run(s, {"C", "B", "A"}, {{"A", "fire"}, {"B", "none"}, {"C", "c1"}});
}

TEST(Svg, SingletStructure) {
  const auto s = scenarios::singlet();
  const std::string svg = render_svg(s, singlet_run(s));
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  EXPECT_EQ(count_class(svg, "worldline"), 2u);
  EXPECT_EQ(count_class(svg, "cone"), 2u);
  EXPECT_EQ(count_class(svg, "surface"), 2u);
  EXPECT_EQ(count_class(svg, "detector"), 2u);
  EXPECT_EQ(count_class(svg, "interaction"), 0u);
  EXPECT_EQ(count_class(svg, "initial-surface"), 1u);
  EXPECT_NE(svg.find("S1- / S1+"), std::string::npos);
  EXPECT_NE(svg.find("S2- / S2+"), std::string::npos);
}

TEST(Svg, SplitReverseOrder) {
  const auto s = scenarios::split_particle();
  const std::string svg = render_svg(s, split_cba(s));
  EXPECT_EQ(count_class(svg, "surface"), 3u);
  EXPECT_EQ(count_class(svg, "interaction"), 2u);
  EXPECT_EQ(count_class(svg, "worldline"), 4u);
  // The first reduction surface is C's cone alone.
  EXPECT_NE(svg.find("data-label=\"S1\" data-detector=\"C\""), std::string::npos);
}

TEST(Svg, Deterministic) {
  const auto s = scenarios::split_particle();
  EXPECT_EQ(render_svg(s, split_cba(s)), render_svg(s, split_cba(s)));
}

TEST(Svg, Golden) {
  const auto singlet = scenarios::singlet();
  EXPECT_EQ(render_svg(singlet, singlet_run(singlet)), read(PSV_GOLDEN_DIR "/singlet.svg"));
  const auto split = scenarios::split_particle();
  EXPECT_EQ(render_svg(split, split_cba(split)), read(PSV_GOLDEN_DIR "/split_cba.svg"));
}

TEST(Svg, NoDetectors) {
  auto s = scenarios::ghz();
  s.detectors.clear();
  s.validate();
  const auto rec = engine::run(s, {}, std::map<std::string, std::string>{});
  const std::string svg = render_svg(s, rec);
  EXPECT_EQ(count_class(svg, "initial-surface"), 1u);
  EXPECT_EQ(count_class(svg, "surface"), 0u);
  EXPECT_EQ(count_class(svg, "cone"), 0u);
}

TEST(Svg, RefusesHigherDimensions) {
  scenarios::SingletConfig cfg;
  cfg.layout = scenarios::embed(cfg.layout, 2);
  const auto s = scenarios::singlet(cfg);
  EXPECT_THROW(render_svg(s, singlet_run(s)), ConfigError);
  EXPECT_THROW(render_ascii(s, singlet_run(s)), ConfigError);
}

TEST(Ascii, Grid) {
  const auto s = scenarios::split_particle();
  const std::string art = render_ascii(s, split_cba(s), 60, 20);
  std::istringstream in(art);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    EXPECT_LE(line.size(), 60u);
    ++rows;
  }
  EXPECT_EQ(rows, 20u);
  for (char c : {'A', 'B', 'C', '1', '2', '3', '*'}) {
    EXPECT_NE(art.find(c), std::string::npos) << c;
  }
}

TEST(File, WriteErrors) {
  EXPECT_THROW(write_file("/nonexistent/dir/out.svg", "x"), IoError);
}

}  // namespace
}  // namespace psv::diagram
