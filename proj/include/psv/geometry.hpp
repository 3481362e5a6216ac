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

#pragma once

// Minkowski causal structure: intervals, backward light cones and light-cone
// spacelike hypersurfaces built as upper envelopes of those cones.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace psv::geometry {

/// Tolerance for On/Past/Future tie-breaking, in scenario units.
inline constexpr double kGeomEps = 1e-9;

using SpatialPoint = std::vector<double>;

/// A spacetime point (t, x). Every event in one scenario has the same
/// spatial dimension.
struct Event {
  double t = 0.0;
  SpatialPoint x;

  std::size_t dim() const { return x.size(); }
  bool operator==(const Event &) const = default;
};

enum class Separation { Spacelike, Timelike, Lightlike };

struct Classification {
  Separation kind;
  double interval;
};

const char *to_string(Separation s);

/// c^2 (t0 - t1)^2 - |x0 - x1|^2. Throws ConfigError on dimension mismatch.
double interval(const Event &e0, const Event &e1, double c = 1.0);

/// Lightlike only when the interval is exactly zero.
Classification classify(const Event &e0, const Event &e1, double c = 1.0);

/// Time at which the backward light cone of `apex` passes over `x`.
double blc_time(const Event &apex, std::span<const double> x, double c = 1.0);

/// Which limit of a reduction surface a state refers to.
enum class Side { Minus, Plus, Exact };

const char *to_string(Side s);

/// Light-cone spacelike hypersurface: the pointwise maximum of an initial
/// flat surface (or t0 = -inf) and the backward light cones of its apexes.
/// Evaluated lazily through time_at().
class Lcsh {
 public:
  /// t0 = -infinity, c = 1.
  Lcsh() = default;
  static Lcsh flat(double t0, double c = 1.0);
  static Lcsh minus_infinity(double c = 1.0);
  /// The single backward cone of `apex` over t0 = -inf.
  static Lcsh cone(const Event &apex, double c = 1.0);

  /// Surface time over x; -infinity when there is neither an initial surface
  /// nor an apex.
  double time_at(std::span<const double> x) const;

  const std::optional<double> &initial_time() const { return t0_; }
  const std::vector<Event> &apexes() const { return apexes_; }
  double c() const { return c_; }
  Side side() const { return side_; }

  Lcsh with_side(Side side) const;

  bool operator==(const Lcsh &) const = default;

 private:
  friend Lcsh adjoin_apex(const Lcsh &s, const Event &apex);
  Lcsh(std::optional<double> t0, double c) : t0_(t0), c_(c) {}

  std::optional<double> t0_;  // nullopt encodes t0 = -infinity
  std::vector<Event> apexes_;
  double c_ = 1.0;
  Side side_ = Side::Exact;
};

/// surface_time(s, x) with the name used throughout the engine.
inline double surface_time(const Lcsh &s, std::span<const double> x) {
  return s.time_at(x);
}

/// Extends `s` with the backward cone of `apex`. Throws OrderingError if the
/// apex lies strictly below the surface.
Lcsh adjoin_apex(const Lcsh &s, const Event &apex);

/// Axis-aligned spatial box.
struct Region {
  SpatialPoint lo;
  SpatialPoint hi;

  std::size_t dim() const { return lo.size(); }
  /// Bounding box of the spatial positions of `events`, grown by `pad`.
  static Region bounding(std::span<const Event> events, double pad = 0.0);
};

/// Sample points used for surface comparisons: a regular grid over a region
/// plus extra points (typically apex projections).
struct ProbeSet {
  std::vector<SpatialPoint> points;

  static ProbeSet grid(const Region &region, std::size_t per_axis = 64);
  void add(const SpatialPoint &p) { points.push_back(p); }
  void add_apexes(const Lcsh &s);
};

/// True iff s1 >= s0 on every probe and s1 > s0 on at least one.
bool is_future_of(const Lcsh &s1, const Lcsh &s0, const ProbeSet &probes);

/// Convenience overload: probes the bounding box of both surfaces' apexes
/// (padded by 1) with the default grid.
bool is_future_of(const Lcsh &s1, const Lcsh &s0);

enum class EventSide { Past, On, Future };

const char *to_string(EventSide s);

EventSide event_side_of_surface(const Event &e, const Lcsh &s);

/// Relation of a query surface to a reference surface over a probe set.
enum class SurfaceRelation {
  Coincident,  // equal within kGeomEps everywhere
  Future,      // query >= reference everywhere, strictly somewhere
  Past,        // query <= reference everywhere, strictly somewhere
  Crossing,    // strictly above somewhere and strictly below elsewhere
};

const char *to_string(SurfaceRelation r);

SurfaceRelation relate(const Lcsh &query, const Lcsh &reference,
                       const ProbeSet &probes);

}  // namespace psv::geometry
