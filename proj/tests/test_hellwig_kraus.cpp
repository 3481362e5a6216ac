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

#include <cmath>
#include <array>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "psv/hellwig_kraus.hpp"

namespace psv::hellwig_kraus {
namespace {

using hilbert::Axis;
using hilbert::Sign;

Event ev(double t, double x) { return {t, {x}}; }

oracle::Dir dir(const Axis &a) { return {a.x(), a.y(), a.z()}; }

Scenario bare(const Axis &i, const Axis &j) {
  scenarios::SingletConfig cfg;
  cfg.a_axis = i;
  cfg.b_axis = j;
  return scenarios::singlet(cfg);
}

TEST(Region, Ids) {
  const auto s = bare(Axis::z_axis(), Axis::x_axis());
  EXPECT_EQ(hk_region_of(ev(-20, 0), s).id(), 1);
  EXPECT_EQ(hk_region_of(ev(5, -4), s).id(), 2);  // behind B's cone only
  EXPECT_EQ(hk_region_of(ev(5, 4), s).id(), 3);   // behind A's cone only
  EXPECT_EQ(hk_region_of(ev(20, 0), s).id(), 4);
  const auto r2 = hk_region_of(ev(5, -4), s);
  EXPECT_EQ(r2.sides, (std::vector<ConeSide>{ConeSide::Past, ConeSide::Future}));
}

TEST(Region, OnConeIsAmbiguous) {
  const auto s = bare(Axis::z_axis(), Axis::x_axis());
  EXPECT_THROW(hk_region_of(ev(6, -4), s), AmbiguousRegionError);
  EXPECT_THROW(hk_region_of(ev(10, 8), s), AmbiguousRegionError);
}

TEST(Region, Precedence) {
  const auto s = bare(Axis::z_axis(), Axis::x_axis());
  const auto r1 = make_region(s, {ConeSide::Past, ConeSide::Past});
  const auto r2 = make_region(s, {ConeSide::Past, ConeSide::Future});
  const auto r3 = make_region(s, {ConeSide::Future, ConeSide::Past});
  const auto r4 = make_region(s, {ConeSide::Future, ConeSide::Future});
  EXPECT_TRUE(r1.precedes_or_equals(r4));
  EXPECT_TRUE(r2.precedes_or_equals(r4));
  EXPECT_FALSE(r2.precedes_or_equals(r3));
  EXPECT_FALSE(r4.precedes_or_equals(r1));
  EXPECT_THROW(make_region(s, {ConeSide::Past}), ConfigError);
}

TEST(State, FourRegions) {
  const Axis i = Axis::from_angles(0.6, 0);
  const Axis j = Axis::from_angles(2.2, 0);
  const auto s = bare(i, j);
  const std::map<std::string, std::string> out{{"A", "+"}, {"B", "+"}};

  const auto s1 = hk_state(s, out, make_region(s, {ConeSide::Past, ConeSide::Past}));
  EXPECT_LE(hilbert::phase_distance(s1, s.initial_state), 1e-12);

  const auto s2 = hk_state(s, out, make_region(s, {ConeSide::Past, ConeSide::Future}));
  const auto a2 = hilbert::factor_state(s2, "a");
  EXPECT_NEAR(std::abs(hilbert::axis_eigenstate(j, Sign::Minus).dot(a2)), 1.0, 1e-12);

  const auto s3 = hk_state(s, out, make_region(s, {ConeSide::Future, ConeSide::Past}));
  const auto b3 = hilbert::factor_state(s3, "b");
  EXPECT_NEAR(std::abs(hilbert::axis_eigenstate(i, Sign::Minus).dot(b3)), 1.0, 1e-12);

  EXPECT_THROW(hk_state(s, {{"A", "+"}}, make_region(s, {ConeSide::Past, ConeSide::Future})),
               ConfigError);
}

TEST(State, RegionFourMatchesEngine) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(0, oracle::kPi), ph(-oracle::kPi, oracle::kPi);
  for (int n = 0; n < 10; ++n) {
    const auto s = bare(Axis::from_angles(th(rng), ph(rng)), Axis::from_angles(th(rng), ph(rng)));
    const auto r4 = make_region(s, {ConeSide::Future, ConeSide::Future});
    for (const auto &order : engine::enumerate_valid_orders(s)) {
      const auto dist = engine::joint_distribution(s, order);
      for (const auto &[t, p] : dist.probabilities) {
        const std::map<std::string, std::string> fixed{{"A", t[0]}, {"B", t[1]}};
        const auto rec = engine::run(s, order, fixed);
        EXPECT_LE(hilbert::phase_distance(hk_state(s, fixed, r4), rec.final_state), 1e-12);
      }
    }
  }
}

TEST(Distribution, AgreesWithEngineWithoutCopies) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> th(0, oracle::kPi), ph(-oracle::kPi, oracle::kPi);
  for (int n = 0; n < 25; ++n) {
    const auto s = bare(Axis::from_angles(th(rng), ph(rng)), Axis::from_angles(th(rng), ph(rng)));
    for (const auto &order : engine::enumerate_valid_orders(s)) {
      EXPECT_LE(engine::max_deviation(hk_joint_distribution(s, order),
                                      engine::joint_distribution(s, order)),
                1e-12);
    }
  }
}

TEST(Distribution, RejectsInteractions) {
  scenarios::SingletConfig cfg;
  cfg.copies = true;
  const auto s = scenarios::singlet(cfg);
  EXPECT_THROW(hk_joint_distribution(s, {"A", "B", "C"}), ConfigError);
}

TEST(Comparator, HkAlwaysOne) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> th(0.2, oracle::kPi - 0.2), ph(-oracle::kPi, oracle::kPi);
  for (int n = 0; n < 20; ++n) {
    scenarios::SingletConfig cfg;
    cfg.a_axis = Axis::from_angles(th(rng), ph(rng));
    cfg.b_axis = Axis::from_angles(th(rng), ph(rng));
    cfg.copy_basis = Axis::from_angles(th(rng), ph(rng));
    const auto cmp = hk_copy_inconsistency(cfg);
    EXPECT_NEAR(cmp.hk_conditional, 1.0, 1e-12);
  }
}

TEST(Comparator, PsvMatchesDenseOracle) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> th(0.2, oracle::kPi - 0.2), ph(-oracle::kPi, oracle::kPi);
  for (int n = 0; n < 20; ++n) {
    scenarios::SingletConfig cfg;
    cfg.a_axis = Axis::from_angles(th(rng), ph(rng));
    cfg.b_axis = Axis::from_angles(th(rng), ph(rng));
    cfg.copy_basis = Axis::from_angles(th(rng), ph(rng));
    const auto cmp = hk_copy_inconsistency(cfg);
    const double expect = oracle::copy_conditional(dir(cfg.a_axis), dir(cfg.b_axis),
                                                   dir(cfg.copy_basis), dir(cfg.b_axis),
                                                   dir(cfg.a_axis));
    EXPECT_NEAR(cmp.psv_conditional, expect, 1e-12);
  }
}

TEST(Comparator, GenericAxesDisagree) {
  const std::vector<std::array<Axis, 3>> cases{
      {Axis::x_axis(), Axis::z_axis(), Axis::z_axis()},
      {Axis::x_axis(), Axis::y_axis(), Axis::z_axis()},
      {Axis::from_angles(0.4, 0), Axis::from_angles(1.9, 0), Axis::z_axis()},
      {Axis::from_angles(1.0, 0.5), Axis::from_angles(2.0, -1.0), Axis::from_angles(0.7, 2.0)},
  };
  for (const auto &[i, j, k] : cases) {
    scenarios::SingletConfig cfg;
    cfg.a_axis = i;
    cfg.b_axis = j;
    cfg.copy_basis = k;
    const auto cmp = hk_copy_inconsistency(cfg);
    EXPECT_EQ(cmp.hk_conditional, 1.0);
    EXPECT_LT(cmp.psv_conditional, 1.0 - 1e-6);
  }
}

TEST(Comparator, RegressionValue) {
  scenarios::SingletConfig cfg;
  cfg.a_axis = Axis::x_axis();
  cfg.b_axis = Axis::z_axis();
  cfg.copy_basis = Axis::z_axis();
  const auto cmp = hk_copy_inconsistency(cfg);
  EXPECT_NEAR(cmp.psv_conditional, 0.5, 1e-12);
  EXPECT_NEAR(cmp.joint_ab, 0.25, 1e-12);
}

TEST(Comparator, AlignedCase) {
  // A and B along opposite directions so that A+, B+ is possible; the copy
  // basis agrees with both measurement axes.
  scenarios::SingletConfig cfg;
  cfg.a_axis = Axis::from_angles(0.9, 0.3);
  cfg.b_axis = cfg.a_axis.negated();
  cfg.copy_basis = cfg.a_axis;
  const auto cmp = hk_copy_inconsistency(cfg);
  EXPECT_NEAR(cmp.hk_conditional, 1.0, 1e-12);
  EXPECT_NEAR(cmp.psv_conditional, 1.0, 1e-12);

  // Literally equal axes leave A+, B+ impossible.
  cfg.b_axis = cfg.a_axis;
  EXPECT_THROW(hk_copy_inconsistency(cfg), ImpossibleBranchError);
}

TEST(Comparator, RequiresRegionLayout) {
  scenarios::SingletConfig cfg;
  cfg.a_axis = Axis::x_axis();
  std::swap(cfg.layout.aa1, cfg.layout.aa2);
  EXPECT_THROW(hk_copy_inconsistency(cfg), ConfigError);
}

}  // namespace
}  // namespace psv::hellwig_kraus
