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

// Physical-state-vector evolution. A run walks the detectors in a chosen
// reduction order; each detector extends the current light-cone surface by
// its backward cone, every interaction that falls behind the new surface is
// applied unitarily, and then the detector projects the state and records
// its reading in its register.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "psv/geometry.hpp"
#include "psv/hilbert.hpp"

namespace psv::engine {

using geometry::Event;
using geometry::Lcsh;
using hilbert::Matrix;
using hilbert::StateVector;

/// A measurement whose largest outcome probability is within this of 1 is
/// not a reduction.
inline constexpr double kCertEps = 1e-9;
/// Allowed discrepancy between application orders of spacelike interactions.
inline constexpr double kCommuteEps = 1e-10;
/// Factorial guard for order enumeration.
inline constexpr std::size_t kMaxOrderDetectors = 8;
/// Guard on the number of outcome tuples joint_distribution may visit.
inline constexpr double kMaxBranches = 1e6;

/// A local unitary acting at a spacetime point, e.g. a copy device.
struct InteractionEvent {
  std::string name;
  Event at;
  std::vector<std::string> targets;
  Matrix unitary;
};

struct DetectorEvent {
  std::string label;
  Event at;
  hilbert::OutcomeSet outcomes;
  std::string register_label;
  bool absorbing = false;
  /// Register basis index written for each outcome (0 = ready state, i.e.
  /// "nothing happened").
  std::vector<std::size_t> pointers;
};

/// Polyline used only for rendering.
struct Worldline {
  std::string label;
  std::vector<Event> points;
};

struct Scenario {
  std::string name;
  std::size_t dim = 1;
  double c = 1.0;
  StateVector initial_state;
  Lcsh initial_surface;
  std::vector<InteractionEvent> interactions;
  std::vector<DetectorEvent> detectors;
  std::vector<std::string> charged_modes;
  std::vector<Worldline> worldlines;

  /// Throws ConfigError (or OrderingError for events behind the initial
  /// surface) when any structural invariant is violated.
  void validate() const;

  const DetectorEvent &detector(const std::string &label) const;
  std::size_t detector_index(const std::string &label) const;
  std::vector<std::string> detector_labels() const;
  std::vector<Event> all_events() const;
  /// Spatial bounding box of every event and worldline point.
  geometry::Region support_region() const;
  /// Default probe grid over the support region plus all event positions.
  geometry::ProbeSet probes() const;
};

using ReductionOrder = std::vector<std::string>;

/// `earlier` is timelike-before `later` in time, yet the order puts `later`
/// first.
struct OrderViolation {
  std::string earlier;
  std::string later;
};

/// Empty result means the order is valid. Throws ConfigError if `order` is
/// not a permutation of the scenario's detectors.
std::vector<OrderViolation> validate_reduction_order(const Scenario &s,
                                                     const ReductionOrder &order);

/// All linear extensions of the timelike partial order on detectors, in
/// lexicographic order of declaration index.
std::vector<ReductionOrder> enumerate_valid_orders(const Scenario &s);

/// Deterministic generator; every (seed, stream) pair is an independent
/// sequence, so run i of a Monte Carlo batch draws from stream i no matter
/// which thread executes it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 gen_;
};

/// Either a fixed outcome label or a generator to sample one.
using OutcomeChoice = std::variant<std::string, std::reference_wrapper<Rng>>;

struct StepRecord {
  std::string detector;
  Lcsh before;
  Lcsh after;
  std::vector<std::string> interactions;
  StateVector pre_state;
  StateVector post_state;
  std::string outcome;
  double probability = 0.0;
  bool reduction = false;
  /// Probability of every outcome, in outcome-set order.
  std::vector<double> distribution;
};

/// Projects onto `outcome`, empties the absorbed modes for absorbing
/// detectors and writes the outcome's pointer into the register.
StateVector record_reading(const DetectorEvent &d, const StateVector &psi,
                           const std::string &outcome);

/// One detector's turn: extend the surface, apply the interactions that
/// have fallen behind it, then measure.
StepRecord step(const Scenario &s, const Lcsh &surface, const StateVector &psi,
                const std::string &detector, OutcomeChoice choice);

struct RunRecord {
  ReductionOrder order;
  Lcsh initial_surface;
  StateVector initial_state;
  std::vector<StepRecord> steps;
  /// Interactions applied after the last detector.
  std::vector<std::string> final_interactions;
  StateVector final_state;
  double total_probability = 1.0;
  /// Outcome per detector in scenario declaration order.
  std::vector<std::string> outcomes;
};

RunRecord run(const Scenario &s, const ReductionOrder &order,
              const std::map<std::string, std::string> &fixed_outcomes);
RunRecord run(const Scenario &s, const ReductionOrder &order, Rng &rng);

using OutcomeTuple = std::vector<std::string>;

struct JointDistribution {
  std::vector<std::string> detectors;
  std::map<OutcomeTuple, double> probabilities;

  double at(const OutcomeTuple &t) const;
  double total() const;
};

double max_deviation(const JointDistribution &a, const JointDistribution &b);

/// Exact enumeration over outcome tuples (zero-probability branches pruned).
JointDistribution joint_distribution(const Scenario &s,
                                     const ReductionOrder &order);

struct SampleResult {
  std::vector<std::string> detectors;
  std::uint64_t n = 0;
  std::map<OutcomeTuple, std::uint64_t> counts;

  double frequency(const OutcomeTuple &t) const;
};

/// Outcome tuples of n independent sampled runs; run i uses stream i of
/// `seed`. The result does not depend on `threads`.
std::vector<OutcomeTuple> sample_tuples(const Scenario &s,
                                        const ReductionOrder &order,
                                        std::uint64_t n, std::uint64_t seed,
                                        unsigned threads = 1);

SampleResult sample(const Scenario &s, const ReductionOrder &order,
                    std::uint64_t n, std::uint64_t seed, unsigned threads = 1);

struct Undefined {
  std::string reason;
  std::string detector;
};

using HyperplaneState = std::variant<StateVector, Undefined>;

/// The state of a run on an arbitrary light-cone surface. Undefined when the
/// query crosses one of the run's reduction surfaces over the support region
/// or lies behind the initial surface.
HyperplaneState state_on_hyperplane(const Scenario &s, const RunRecord &record,
                                    const Lcsh &query);

/// Applies the listed interactions (by name) in causal order, checking that
/// spacelike pairs commute on this state.
StateVector apply_interactions(const Scenario &s, const StateVector &psi,
                               const std::vector<std::string> &names);

}  // namespace psv::engine
