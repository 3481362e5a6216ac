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

#include <cstdio>
#include <fstream>

#include <gtest/gtest.h>

#include "psv/errors.hpp"
#include "psv/serialize.hpp"

namespace psv::serialize {
namespace {

using engine::Scenario;
using hilbert::Axis;

std::vector<Scenario> shipped() {
  scenarios::SingletConfig copies;
  copies.a_axis = Axis::from_angles(0.4, 1.0);
  copies.b_axis = Axis::from_angles(2.0, -0.3);
  copies.copy_basis = Axis::from_angles(1.1, 0.2);
  copies.copies = true;
  return {scenarios::split_particle(), scenarios::singlet(), scenarios::singlet(copies),
          scenarios::ghz()};
}

TEST(Json, EventAndAxis) {
  const geometry::Event e{1.5, {-2.0, 3.0}};
  EXPECT_EQ(event_from_json(to_json(e)), e);
  EXPECT_EQ(event_from_json(json::parse(R"({"t": 2, "x": 4})")), (geometry::Event{2, {4}}));

  const Axis a = Axis::from_angles(0.7, -2.0);
  const Axis b = axis_from_json(to_json(a));
  EXPECT_NEAR(b.x(), a.x(), 1e-15);
  EXPECT_NEAR(b.y(), a.y(), 1e-15);
  EXPECT_NEAR(b.z(), a.z(), 1e-15);
  const Axis c = axis_from_json(json::parse(R"({"theta": 0.7, "phi": -2.0})"));
  EXPECT_NEAR(c.x(), a.x(), 1e-15);
  EXPECT_EQ(axis_from_json(json("y")), Axis::y_axis());
}

TEST(Json, Surface) {
  geometry::Lcsh s = geometry::Lcsh::flat(-1.0, 2.0);
  s = geometry::adjoin_apex(s, {3.0, {0.5}});
  s = geometry::adjoin_apex(s, {2.0, {9.0}}).with_side(geometry::Side::Plus);
  const json j = to_json(s);
  EXPECT_EQ(lcsh_from_json(j), s);
  EXPECT_EQ(lcsh_from_json(to_json(geometry::Lcsh::minus_infinity())), geometry::Lcsh::minus_infinity());
  EXPECT_EQ(j.at("side"), "plus");
}

TEST(Json, ScenarioRoundTrip) {
  for (const auto &s : shipped()) {
    const json j = to_json(s);
    const Scenario back = scenario_from_json(json::parse(j.dump()));
    EXPECT_EQ(to_json(back), j) << s.name;
    for (const auto &order : engine::enumerate_valid_orders(s)) {
      EXPECT_LE(engine::max_deviation(engine::joint_distribution(s, order),
                                      engine::joint_distribution(back, order)),
                1e-15);
    }
  }
}

TEST(Json, RecordAndDistributionRoundTrip) {
  for (const auto &s : shipped()) {
    engine::Rng rng(4);
    const auto rec = engine::run(s, s.detector_labels(), rng);
    const json j = to_json(rec);
    EXPECT_EQ(to_json(record_from_json(json::parse(j.dump()))), j) << s.name;

    const auto d = engine::joint_distribution(s, s.detector_labels());
    const json jd = to_json(d);
    const auto back = distribution_from_json(json::parse(jd.dump()));
    EXPECT_EQ(back.detectors, d.detectors);
    EXPECT_EQ(back.probabilities, d.probabilities);
  }
}

TEST(Json, ShorthandScenario) {
  const char *text = R"({
    "name": "pair",
    "dim": 1,
    "c": 1,
    "subsystems": [
      {"label": "a", "dim": 2, "kind": "spin"},
      {"label": "b", "dim": 2, "kind": "spin"},
      {"label": "c", "dim": 2, "kind": "spin"},
      {"label": "RA", "dim": 3, "kind": "register"},
      {"label": "RB", "dim": 3, "kind": "register"}
    ],
    "initial_state": {"amplitudes": [
      [0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],
      [0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],
      [1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],
      [0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],
      [0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],
      [0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],
      [-1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],
      [0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]
    ]},
    "initial_surface": {"t0": "minus_infinity"},
    "interactions": [
      {"name": "copy", "at": {"t": 1, "x": [0]}, "subsystems": ["a", "c"],
       "gate": {"copy_basis": "z"}},
      {"name": "phase", "at": {"t": 0.5, "x": [5]}, "subsystems": ["b"],
       "hamiltonian": [[[0,0],[0,0]],[[0,0],[3.14159265358979,0]]], "duration": 1.0}
    ],
    "detectors": [
      {"label": "A", "at": {"t": 4, "x": [-2]}, "target": "a", "axis": "x", "register": "RA"},
      {"label": "B", "at": {"t": 4, "x": [6]}, "targets": ["b"], "axis": {"theta": 1.5707963267948966, "phi": 0}, "register": "RB"}
    ]
  })";
  const Scenario s = scenario_from_json(json::parse(text));
  EXPECT_EQ(s.detectors[0].pointers, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(s.interactions.size(), 2u);
  // Amplitudes are normalized on read.
  EXPECT_NEAR(s.initial_state.norm(), 1.0, 1e-15);
  const auto d = engine::joint_distribution(s, {"A", "B"});
  EXPECT_NEAR(d.total(), 1.0, 1e-12);
}

TEST(Json, MalformedInputIsConfigError) {
  EXPECT_THROW(scenario_from_json(json::parse(R"({"dim": 1})")), ConfigError);
  EXPECT_THROW(scenario_from_json(json::parse(R"({
      "subsystems": [{"label": "a", "dim": 2, "kind": "spin"}],
      "initial_state": {"amplitudes": [[1,0],[0,0]]},
      "detectors": [{"label": "A", "at": {"t": 0, "x": [0]}, "register": "a", "axis": "z"}]
    })")),
               ConfigError);
  EXPECT_THROW(scenario_from_json(json::parse(R"({
      "subsystems": [{"label": "a", "dim": 2, "kind": "spin"}],
      "initial_state": {"amplitudes": [[1,0],[0,0]]},
      "interactions": [{"name": "u", "at": {"t": 0, "x": [0]}, "subsystems": ["a"],
                        "unitary": [[[2,0],[0,0]],[[0,0],[1,0]]]}]
    })")),
               ConfigError);
  EXPECT_THROW(axis_from_json(json::parse(R"({"xyz": [1, 1, 0]})")), ConfigError);
}

TEST(Json, LoadScenario) {
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), IoError);
  const std::string path = ::testing::TempDir() + "psv_ghz.json";
  {
    std::ofstream out(path);
    out << to_json(scenarios::ghz()).dump(2);
  }
  const Scenario s = load_scenario(path);
  EXPECT_EQ(s.name, "ghz");
  std::remove(path.c_str());

  const std::string bad = ::testing::TempDir() + "psv_bad.json";
  {
    std::ofstream out(bad);
    out << "{ not json";
  }
  EXPECT_THROW(load_scenario(bad), ConfigError);
  std::remove(bad.c_str());
}

TEST(Json, Comparison) {
  scenarios::SingletConfig cfg;
  cfg.a_axis = Axis::x_axis();
  const auto j = to_json(hellwig_kraus::hk_copy_inconsistency(cfg));
  EXPECT_EQ(j.at("hk").get<double>(), 1.0);
  EXPECT_NEAR(j.at("psv").get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j.at("axes").at("i"), "x");
  EXPECT_EQ(j.at("axes").at("j"), "z");
}

}  // namespace
}  // namespace psv::serialize
