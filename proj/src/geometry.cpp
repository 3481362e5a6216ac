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

#include "psv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psv/errors.hpp"

namespace psv::geometry {

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ConfigError("spatial dimension mismatch: " + std::to_string(a) +
                      " vs " + std::to_string(b));
  }
}

double spatial_distance(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

// Signed difference with -inf handled: equal infinities compare as 0.
double difference(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a < 0) == (b < 0)) return 0.0;
  return a - b;
}

}  // namespace

const char *to_string(Separation s) {
  switch (s) {
    case Separation::Spacelike: return "spacelike";
    case Separation::Timelike: return "timelike";
    case Separation::Lightlike: return "lightlike";
  }
  return "?";
}

const char *to_string(Side s) {
  switch (s) {
    case Side::Minus: return "minus";
    case Side::Plus: return "plus";
    case Side::Exact: return "exact";
  }
  return "?";
}

const char *to_string(EventSide s) {
  switch (s) {
    case EventSide::Past: return "past";
    case EventSide::On: return "on";
    case EventSide::Future: return "future";
  }
  return "?";
}

const char *to_string(SurfaceRelation r) {
  switch (r) {
    case SurfaceRelation::Coincident: return "coincident";
    case SurfaceRelation::Future: return "future";
    case SurfaceRelation::Past: return "past";
    case SurfaceRelation::Crossing: return "crossing";
  }
  return "?";
}

double interval(const Event &e0, const Event &e1, double c) {
  require_same_dim(e0.dim(), e1.dim());
  const double dt = e0.t - e1.t;
  double dx2 = 0.0;
  for (std::size_t i = 0; i < e0.dim(); ++i) {
    const double d = e0.x[i] - e1.x[i];
    dx2 += d * d;
  }
  return c * c * dt * dt - dx2;
}

Classification classify(const Event &e0, const Event &e1, double c) {
  const double s = interval(e0, e1, c);
  if (s > 0.0) return {Separation::Timelike, s};
  if (s < 0.0) return {Separation::Spacelike, s};
  return {Separation::Lightlike, s};
}

double blc_time(const Event &apex, std::span<const double> x, double c) {
  return apex.t - spatial_distance(x, apex.x) / c;
}

Lcsh Lcsh::flat(double t0, double c) {
  if (!(c > 0.0)) throw ConfigError("speed of light must be positive");
  return Lcsh(t0, c);
}

Lcsh Lcsh::minus_infinity(double c) {
  if (!(c > 0.0)) throw ConfigError("speed of light must be positive");
  return Lcsh(std::nullopt, c);
}

Lcsh Lcsh::cone(const Event &apex, double c) {
  return adjoin_apex(minus_infinity(c), apex);
}

double Lcsh::time_at(std::span<const double> x) const {
  double t = t0_ ? *t0_ : kMinusInf;
  for (const auto &apex : apexes_) t = std::max(t, blc_time(apex, x, c_));
  return t;
}

Lcsh Lcsh::with_side(Side side) const {
  Lcsh out = *this;
  out.side_ = side;
  return out;
}

Lcsh adjoin_apex(const Lcsh &s, const Event &apex) {
  if (!s.apexes_.empty()) require_same_dim(s.apexes_.front().dim(), apex.dim());
  const double below = s.time_at(apex.x);
  if (apex.t < below - kGeomEps) {
    throw OrderingError("apex at t=" + std::to_string(apex.t) +
                        " lies below the surface (t=" + std::to_string(below) +
                        ")");
  }
  Lcsh out = s;
  out.apexes_.push_back(apex);
  return out;
}

Region Region::bounding(std::span<const Event> events, double pad) {
  Region r;
  if (events.empty()) return r;
  r.lo = events.front().x;
  r.hi = events.front().x;
  for (const auto &e : events) {
    require_same_dim(e.dim(), r.lo.size());
    for (std::size_t i = 0; i < e.dim(); ++i) {
      r.lo[i] = std::min(r.lo[i], e.x[i]);
      r.hi[i] = std::max(r.hi[i], e.x[i]);
    }
  }
  for (std::size_t i = 0; i < r.lo.size(); ++i) {
    r.lo[i] -= pad;
    r.hi[i] += pad;
  }
  return r;
}

ProbeSet ProbeSet::grid(const Region &region, std::size_t per_axis) {
  ProbeSet probes;
  const std::size_t d = region.dim();
  if (d == 0 || per_axis == 0) return probes;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= per_axis;
  probes.points.reserve(total);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t n = 0; n < total; ++n) {
    SpatialPoint p(d);
    for (std::size_t i = 0; i < d; ++i) {
      const double f =
          per_axis == 1 ? 0.5 : static_cast<double>(idx[i]) / (per_axis - 1);
      p[i] = region.lo[i] + f * (region.hi[i] - region.lo[i]);
    }
    probes.points.push_back(std::move(p));
    for (std::size_t i = 0; i < d; ++i) {
      if (++idx[i] < per_axis) break;
      idx[i] = 0;
    }
  }
  return probes;
}

void ProbeSet::add_apexes(const Lcsh &s) {
  for (const auto &apex : s.apexes()) points.push_back(apex.x);
}

bool is_future_of(const Lcsh &s1, const Lcsh &s0, const ProbeSet &probes) {
  bool strict = false;
  for (const auto &p : probes.points) {
    const double d = difference(s1.time_at(p), s0.time_at(p));
    if (d < -kGeomEps) return false;
    if (d > kGeomEps) strict = true;
  }
  return strict;
}

bool is_future_of(const Lcsh &s1, const Lcsh &s0) {
  std::vector<Event> apexes = s1.apexes();
  apexes.insert(apexes.end(), s0.apexes().begin(), s0.apexes().end());
  ProbeSet probes;
  if (apexes.empty()) {
    probes.add(SpatialPoint{0.0});
  } else {
    probes = ProbeSet::grid(Region::bounding(apexes, 1.0));
    probes.add_apexes(s1);
    probes.add_apexes(s0);
  }
  return is_future_of(s1, s0, probes);
}

EventSide event_side_of_surface(const Event &e, const Lcsh &s) {
  const double d = difference(e.t, s.time_at(e.x));
  if (d > kGeomEps) return EventSide::Future;
  if (d < -kGeomEps) return EventSide::Past;
  return EventSide::On;
}

SurfaceRelation relate(const Lcsh &query, const Lcsh &reference,
                       const ProbeSet &probes) {
  bool above = false;
  bool below = false;
  for (const auto &p : probes.points) {
    const double d = difference(query.time_at(p), reference.time_at(p));
    if (d > kGeomEps) above = true;
    if (d < -kGeomEps) below = true;
  }
  if (above && below) return SurfaceRelation::Crossing;
  if (above) return SurfaceRelation::Future;
  if (below) return SurfaceRelation::Past;
  return SurfaceRelation::Coincident;
}

}  // namespace psv::geometry
