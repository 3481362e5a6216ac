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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "psv/errors.hpp"
#include "psv/geometry.hpp"

namespace psv::geometry {
namespace {

Event ev(double t, double x) { return {t, {x}}; }

TEST(Interval, Examples) {
  EXPECT_EQ(interval(ev(0, 0), ev(0, 0)), 0.0);
  EXPECT_EQ(interval(ev(0, 0), ev(0, 1)), -1.0);
  EXPECT_EQ(interval(ev(2, 0), ev(0, 0)), 4.0);
  EXPECT_EQ(interval(ev(2, 0), ev(0, 0), 3.0), 36.0);
}

TEST(Interval, DimensionMismatch) {
  EXPECT_THROW(interval(ev(0, 0), Event{0, {0, 0}}), ConfigError);
}

TEST(Classify, Examples) {
  auto c = classify(ev(0, 0), ev(1, 1));
  EXPECT_EQ(c.kind, Separation::Lightlike);
  EXPECT_EQ(c.interval, 0.0);
  c = classify(ev(0, 0), ev(0, 3));
  EXPECT_EQ(c.kind, Separation::Spacelike);
  EXPECT_EQ(c.interval, -9.0);
  c = classify(ev(5, 0), ev(0, 1));
  EXPECT_EQ(c.kind, Separation::Timelike);
  EXPECT_EQ(c.interval, 24.0);
}

TEST(Classify, ThreeDimensions) {
  const Event a{0, {0, 0, 0}};
  const Event b{5, {3, 4, 0}};
  EXPECT_EQ(classify(a, b).kind, Separation::Lightlike);
  EXPECT_EQ(classify(a, b, 2.0).kind, Separation::Timelike);
}

TEST(BlcTime, Examples) {
  const std::vector<double> x0{0}, x1{1}, x2{2};
  EXPECT_EQ(blc_time(ev(1, 0), x0), 1.0);
  EXPECT_EQ(blc_time(ev(1, 0), x1), 0.0);
  EXPECT_DOUBLE_EQ(blc_time(ev(0, 0), x2, 2.0), -1.0);
}

TEST(SurfaceTime, Examples) {
  const std::vector<double> x0{0}, x2{2}, x7{7};
  const Lcsh flat = Lcsh::flat(0.0);
  EXPECT_EQ(surface_time(flat, x0), 0.0);
  EXPECT_EQ(surface_time(flat, x7), 0.0);

  const Lcsh one = adjoin_apex(Lcsh::minus_infinity(), ev(1, 0));
  EXPECT_EQ(surface_time(one, x0), 1.0);

  const Lcsh two = adjoin_apex(one, ev(1, 4));
  EXPECT_EQ(surface_time(two, x2), -1.0);

  EXPECT_EQ(surface_time(Lcsh::minus_infinity(), x0),
            -std::numeric_limits<double>::infinity());
}

TEST(AdjoinApex, FlatThenCone) {
  const Lcsh s = adjoin_apex(Lcsh::flat(0.0), ev(1, 0));
  for (double x = -3; x <= 3; x += 0.25) {
    const std::vector<double> p{x};
    EXPECT_DOUBLE_EQ(s.time_at(p), std::max(0.0, 1.0 - std::abs(x)));
  }
}

TEST(AdjoinApex, Idempotent) {
  const Lcsh once = adjoin_apex(Lcsh::flat(-2.0), ev(1, 0.5));
  const Lcsh twice = adjoin_apex(once, ev(1, 0.5));
  for (double x = -5; x <= 5; x += 0.1) {
    const std::vector<double> p{x};
    EXPECT_EQ(once.time_at(p), twice.time_at(p));
  }
}

TEST(AdjoinApex, TwoCones) {
  const Lcsh s = adjoin_apex(Lcsh::cone(ev(0, 0)), ev(0, 10));
  const std::vector<double> x5{5}, x9{9};
  EXPECT_EQ(s.time_at(x5), -5.0);
  EXPECT_EQ(s.time_at(x9), -1.0);
}

TEST(AdjoinApex, BelowSurfaceIsOrderingError) {
  const Lcsh s = Lcsh::cone(ev(5, 0));
  EXPECT_THROW(adjoin_apex(s, ev(2, 0)), OrderingError);
  EXPECT_NO_THROW(adjoin_apex(s, ev(0, 5)));  // on the cone
  EXPECT_NO_THROW(adjoin_apex(s, ev(0, 10)));
}

TEST(IsFutureOf, Examples) {
  EXPECT_TRUE(is_future_of(Lcsh::flat(1.0), Lcsh::flat(0.0)));
  EXPECT_FALSE(is_future_of(Lcsh::flat(0.0), Lcsh::flat(1.0)));
  const Lcsh s = adjoin_apex(Lcsh::flat(0.0), ev(2, 1));
  EXPECT_FALSE(is_future_of(s, s));
  EXPECT_TRUE(is_future_of(s, Lcsh::flat(0.0)));
  EXPECT_TRUE(is_future_of(Lcsh::flat(0.0), Lcsh::minus_infinity()));
}

TEST(EventSide, Examples) {
  EXPECT_EQ(event_side_of_surface(ev(-1, 3), Lcsh::flat(0.0)), EventSide::Past);
  const Lcsh s = Lcsh::cone(ev(1, 0));
  EXPECT_EQ(event_side_of_surface(ev(1, 0), s), EventSide::On);
  EXPECT_EQ(event_side_of_surface(ev(0.5, 0), s), EventSide::Past);
  EXPECT_EQ(event_side_of_surface(ev(0.5, 2), s), EventSide::Future);
  EXPECT_EQ(event_side_of_surface(ev(0, 100), Lcsh::minus_infinity()), EventSide::Future);
}

TEST(Relate, Cases) {
  auto probes = ProbeSet::grid(Region{{-10}, {10}});
  const Lcsh s = Lcsh::cone(ev(0, 0));
  EXPECT_EQ(relate(s, s, probes), SurfaceRelation::Coincident);
  EXPECT_EQ(relate(adjoin_apex(s, ev(0, 4)), s, probes), SurfaceRelation::Future);
  EXPECT_EQ(relate(s, adjoin_apex(s, ev(0, 4)), probes), SurfaceRelation::Past);
  EXPECT_EQ(relate(Lcsh::flat(-3.0), s, probes), SurfaceRelation::Crossing);
}

TEST(ProbeSet, GridCounts) {
  EXPECT_EQ(ProbeSet::grid(Region{{0}, {1}}).points.size(), 64u);
  EXPECT_EQ(ProbeSet::grid(Region{{0, 0}, {1, 1}}, 8).points.size(), 64u);
  EXPECT_EQ(ProbeSet::grid(Region{{0, 0, 0}, {1, 1, 1}}, 4).points.size(), 64u);
}

// Random surfaces: flat or -inf start with a handful of apexes adjoined in
// time order.
struct RandomSurface {
  std::mt19937_64 rng;
  explicit RandomSurface(std::uint64_t seed) : rng(seed) {}

  Lcsh make(std::size_t dim, double c) {
    std::uniform_real_distribution<double> u(-10, 10);
    std::uniform_int_distribution<int> n(1, 6);
    Lcsh s = (rng() & 1) ? Lcsh::flat(u(rng) * 0.1, c) : Lcsh::minus_infinity(c);
    std::vector<Event> apexes;
    for (int i = n(rng); i > 0; --i) {
      Event e{u(rng), {}};
      for (std::size_t d = 0; d < dim; ++d) e.x.push_back(u(rng));
      apexes.push_back(e);
    }
    for (const auto &e : apexes) {
      Event lifted = e;
      lifted.t = std::max(e.t, s.time_at(e.x));
      s = adjoin_apex(s, lifted);
    }
    return s;
  }
};

TEST(Property, Achronality) {
  RandomSurface gen(7);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-15, 15);
  for (std::size_t dim = 1; dim <= 3; ++dim) {
    for (int trial = 0; trial < 20; ++trial) {
      const double c = 0.5 + trial * 0.1;
      const Lcsh s = gen.make(dim, c);
      for (int k = 0; k < 500; ++k) {
        Event p{0, {}}, q{0, {}};
        for (std::size_t d = 0; d < dim; ++d) {
          p.x.push_back(u(rng));
          q.x.push_back(u(rng));
        }
        p.t = s.time_at(p.x);
        q.t = s.time_at(q.x);
        if (!std::isfinite(p.t) || !std::isfinite(q.t)) continue;
        EXPECT_LE(interval(p, q, c), kGeomEps * (1 + p.t * p.t + q.t * q.t));
      }
    }
  }
}

TEST(Property, MonotoneAndOrderIndependent) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Event> apexes;
    for (int i = 0; i < 5; ++i) apexes.push_back(ev(u(rng), u(rng)));
    Lcsh fwd = Lcsh::minus_infinity();
    for (const auto &a : apexes) {
      const Lcsh next = adjoin_apex(fwd, Event{std::max(a.t, fwd.time_at(a.x)), a.x});
      for (double x = -20; x <= 20; x += 0.5) {
        const std::vector<double> p{x};
        EXPECT_GE(next.time_at(p), fwd.time_at(p));
      }
      fwd = next;
    }
  }
}

TEST(Property, SpacelikeApexesCommute) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> jitter(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Event> apexes;
    for (int i = 0; i < 6; ++i) apexes.push_back(ev(jitter(rng), 10.0 * i + jitter(rng)));
    Lcsh fwd = Lcsh::flat(-20.0);
    for (const auto &a : apexes) fwd = adjoin_apex(fwd, a);
    std::shuffle(apexes.begin(), apexes.end(), rng);
    Lcsh shuffled = Lcsh::flat(-20.0);
    for (const auto &a : apexes) shuffled = adjoin_apex(shuffled, a);
    shuffled = adjoin_apex(shuffled, apexes.front());
    for (double x = -20; x <= 70; x += 0.25) {
      const std::vector<double> p{x};
      EXPECT_EQ(shuffled.time_at(p), fwd.time_at(p));
    }
  }
}

TEST(Property, StrictAdjoinIsFuture) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5, 5);
  Lcsh s = Lcsh::flat(0.0);
  for (int i = 0; i < 30; ++i) {
    const Event apex{20.0 * (i + 1), {u(rng)}};
    const Lcsh next = adjoin_apex(s, apex);
    EXPECT_TRUE(is_future_of(next, s));
    s = next;
  }
}

double spread(const Lcsh &s, double lo, double hi) {
  double tmin = std::numeric_limits<double>::infinity();
  double tmax = -tmin;
  for (double x = lo; x <= hi; x += (hi - lo) / 200) {
    const std::vector<double> p{x};
    tmin = std::min(tmin, s.time_at(p));
    tmax = std::max(tmax, s.time_at(p));
  }
  return tmax - tmin;
}

TEST(Property, NonrelativisticLimit) {
  for (double c = 1.0; c < 1e6; c *= 2) {
    Lcsh s = Lcsh::minus_infinity(c);
    Lcsh s2 = Lcsh::minus_infinity(2 * c);
    for (double x : {-3.0, 0.5, 4.0}) {
      s = adjoin_apex(s, ev(1.0, x));
      s2 = adjoin_apex(s2, ev(1.0, x));
    }
    EXPECT_LE(spread(s2, -5, 5), 0.5 * spread(s, -5, 5) + 1e-12);
  }
  // Apexes at different times: the latest cone flattens onto t = 3 and
  // covers the region.
  Lcsh s = Lcsh::minus_infinity(1e9);
  s = adjoin_apex(s, ev(1.0, -2));
  s = adjoin_apex(s, ev(3.0, 2));
  EXPECT_NEAR(spread(s, -5, 5), 0.0, 1e-6);
  const std::vector<double> far{-5};
  EXPECT_NEAR(s.time_at(far), 3.0, 1e-6);
}

}  // namespace
}  // namespace psv::geometry
