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

// The rival region-based prescription: every spacetime region bounded by
// the detectors' backward light cones gets the state reduced by exactly the
// detectors whose cones lie below it. Combined with copy devices it predicts
// perfectly correlated copies, which the comparator sets against the value
// obtained from the reduction-order engine.

#include <map>
#include <string>
#include <vector>

#include "psv/engine.hpp"
#include "psv/errors.hpp"
#include "psv/scenarios.hpp"

namespace psv::hellwig_kraus {

using engine::Scenario;
using geometry::Event;
using hilbert::StateVector;

class AmbiguousRegionError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

enum class ConeSide { Past, Future };

/// One side per detector, in scenario declaration order.
struct HkRegion {
  std::vector<std::string> detectors;
  std::vector<ConeSide> sides;

  /// 1 + sum over detectors of [Future] * 2^(n-1-k): with two detectors A, B
  /// this is 1 = (Past, Past), 2 = (Past, Future), 3 = (Future, Past),
  /// 4 = (Future, Future).
  int id() const;
  /// Componentwise Past <= Future.
  bool precedes_or_equals(const HkRegion &other) const;
  bool operator==(const HkRegion &) const = default;
};

HkRegion make_region(const Scenario &s, const std::vector<ConeSide> &sides);

/// Region containing `e`. Throws AmbiguousRegionError when `e` lies on a
/// detector's cone (regions are open sets).
HkRegion hk_region_of(const Event &e, const Scenario &s);

/// The initial state with the readings of every detector on whose cone's
/// Future side the region lies, and with every interaction whose own region
/// precedes `region`, applied in time order. `outcomes` must name a reading
/// for each of those detectors.
StateVector hk_state(const Scenario &s,
                     const std::map<std::string, std::string> &outcomes,
                     const HkRegion &region);

/// Joint distribution under the region prescription, walking the regions
/// in which the detectors of `order` have successively reduced. Defined for
/// scenarios without interactions.
engine::JointDistribution hk_joint_distribution(const Scenario &s,
                                                const engine::ReductionOrder &order);

struct HkComparison {
  /// P(C reads c1 along B's axis as "-" and c2 along A's axis as "-" | A+,
  /// B+) from the region states with basis-matched copies.
  double hk_conditional = 0.0;
  /// The same conditional probability from the engine with copy gates in
  /// the copy basis.
  double psv_conditional = 0.0;
  /// P(A+, B+).
  double joint_ab = 0.0;
  hilbert::Axis a_axis = hilbert::Axis::z_axis();
  hilbert::Axis b_axis = hilbert::Axis::z_axis();
  hilbert::Axis copy_basis = hilbert::Axis::z_axis();
};

/// Requires AA1 to sit in region 2 and AA2 in region 3 of the bare singlet.
/// `cfg.copies` is forced on; C's axes default to (B's axis, A's axis).
HkComparison hk_copy_inconsistency(scenarios::SingletConfig cfg);

}  // namespace psv::hellwig_kraus
