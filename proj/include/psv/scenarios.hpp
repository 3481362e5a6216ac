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

// Builders for the three reference setups: a charged particle split between
// two detectors with copy devices feeding a third, the spin singlet (with
// optional copy devices), and the three-particle GHZ state.

#include <optional>

#include "psv/engine.hpp"

namespace psv::scenarios {

using engine::Scenario;
using geometry::Event;
using hilbert::Axis;
using hilbert::cplx;

/// Default layout in 1+1 dimensions, c = 1. The source sits at the origin,
/// the branches run at speed 0.8 to A and B, the copy devices sit halfway
/// along the branches, and C is late enough that both copy devices lie in
/// its causal past while A, B and C stay mutually spacelike.
struct Layout {
  Event source{0.0, {0.0}};
  Event a{10.0, {-8.0}};
  Event b{10.0, {8.0}};
  Event c{12.0, {0.0}};
  Event aa1{5.0, {-4.0}};
  Event aa2{5.0, {4.0}};
};

struct SplitParticleConfig {
  Layout layout;
  cplx amp_a{hilbert::kInvSqrt2, 0.0};
  cplx amp_b{hilbert::kInvSqrt2, 0.0};
  double c = 1.0;
};

/// Modes a, b, c1, c2 (all charged) and two-state registers A, B, C.
/// Detector outcomes: A and B read "none"/"fire"; C reads the occupation
/// pattern of (c1, c2) as "none", "c2", "c1" or "both".
Scenario split_particle(const SplitParticleConfig &cfg = {});

struct SingletConfig {
  Layout layout;
  Axis a_axis = Axis::z_axis();
  Axis b_axis = Axis::z_axis();
  /// Basis of the copy devices and of the singlet's written form.
  Axis copy_basis = Axis::z_axis();
  bool copies = false;
  /// C's axes for c1 and c2; default to B's and A's axis respectively.
  std::optional<Axis> c1_axis;
  std::optional<Axis> c2_axis;
  double c = 1.0;
};

/// Spins a, b (+ c1, c2 prepared in |k+> when copies are on) and registers
/// A, B (+ C). A and B read "+"/"-"; C reads two signs, c1 first.
Scenario singlet(const SingletConfig &cfg = {});

struct GhzConfig {
  Event source{0.0, {0.0}};
  Event a{10.0, {-8.0}};
  Event b{10.0, {0.0}};
  Event c{10.0, {8.0}};
  Axis a_axis = Axis::x_axis();
  Axis b_axis = Axis::y_axis();
  Axis c_axis = Axis::y_axis();
  double c_light = 1.0;
};

/// (|+++> - |--->)/sqrt2 along z on spins a, b, c with registers A, B, C.
Scenario ghz(const GhzConfig &cfg = {});

/// Pads (or rejects truncating) the spatial part of every event in a builder
/// layout so the same setup runs in d = 2 or 3.
Layout embed(const Layout &layout, std::size_t dim);
GhzConfig embed(const GhzConfig &cfg, std::size_t dim);

}  // namespace psv::scenarios
