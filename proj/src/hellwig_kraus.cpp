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

#include "psv/hellwig_kraus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace psv::hellwig_kraus {

using geometry::EventSide;

int HkRegion::id() const {
  int id = 1;
  const std::size_t n = sides.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (sides[k] == ConeSide::Future) id += 1 << (n - 1 - k);
  }
  return id;
}

bool HkRegion::precedes_or_equals(const HkRegion &other) const {
  if (detectors != other.detectors) return false;
  for (std::size_t k = 0; k < sides.size(); ++k) {
    if (sides[k] == ConeSide::Future && other.sides[k] == ConeSide::Past) {
      return false;
    }
  }
  return true;
}

HkRegion make_region(const Scenario &s, const std::vector<ConeSide> &sides) {
  if (sides.size() != s.detectors.size()) {
    throw ConfigError("region needs one side per detector");
  }
  return {s.detector_labels(), sides};
}

HkRegion hk_region_of(const Event &e, const Scenario &s) {
  HkRegion r{s.detector_labels(), {}};
  for (const auto &d : s.detectors) {
    switch (geometry::event_side_of_surface(e, geometry::Lcsh::cone(d.at, s.c))) {
      case EventSide::Past: r.sides.push_back(ConeSide::Past); break;
      case EventSide::Future: r.sides.push_back(ConeSide::Future); break;
      case EventSide::On:
        throw AmbiguousRegionError("event lies on the backward cone of detector '" +
                                   d.label + "'");
    }
  }
  return r;
}

StateVector hk_state(const Scenario &s,
                     const std::map<std::string, std::string> &outcomes,
                     const HkRegion &region) {
  if (region.detectors != s.detector_labels()) {
    throw ConfigError("region does not belong to this scenario");
  }
  struct Op {
    double t;
    int kind;  // 0 = interaction, 1 = reading; interactions first on ties
    std::size_t index;
  };
  std::vector<Op> ops;
  for (std::size_t i = 0; i < s.interactions.size(); ++i) {
    if (hk_region_of(s.interactions[i].at, s).precedes_or_equals(region)) {
      ops.push_back({s.interactions[i].at.t, 0, i});
    }
  }
  for (std::size_t k = 0; k < s.detectors.size(); ++k) {
    if (region.sides[k] != ConeSide::Future) continue;
    if (!outcomes.contains(s.detectors[k].label)) {
      throw ConfigError("region needs a reading for detector '" +
                        s.detectors[k].label + "'");
    }
    ops.push_back({s.detectors[k].at.t, 1, k});
  }
  std::stable_sort(ops.begin(), ops.end(), [](const Op &a, const Op &b) {
    return a.t < b.t || (a.t == b.t && a.kind < b.kind);
  });

  StateVector psi = s.initial_state;
  for (const auto &op : ops) {
    if (op.kind == 0) {
      const auto &ev = s.interactions[op.index];
      psi = hilbert::apply_unitary(psi, ev.targets, ev.unitary);
    } else {
      const auto &d = s.detectors[op.index];
      psi = engine::record_reading(d, psi, outcomes.at(d.label));
    }
  }
  return psi.canonical_phase();
}

engine::JointDistribution hk_joint_distribution(const Scenario &s,
                                                const engine::ReductionOrder &order) {
  if (!s.interactions.empty()) {
    throw ConfigError("region joint distribution is defined without interactions");
  }
  if (!engine::validate_reduction_order(s, order).empty()) {
    throw OrderingError("reduction order contradicts time order");
  }
  engine::JointDistribution dist;
  dist.detectors = s.detector_labels();
  std::map<std::string, std::string> chosen;
  std::vector<ConeSide> sides(s.detectors.size(), ConeSide::Past);

  const auto descend = [&](auto &self, std::size_t depth, double prob) -> void {
    if (depth == order.size()) {
      engine::OutcomeTuple t;
      for (const auto &label : dist.detectors) t.push_back(chosen.at(label));
      dist.probabilities[t] += prob;
      return;
    }
    const std::size_t k = s.detector_index(order[depth]);
    const StateVector psi = hk_state(s, chosen, make_region(s, sides));
    const auto &d = s.detectors[k];
    const auto probs = hilbert::born_distribution(psi, d.outcomes);
    sides[k] = ConeSide::Future;
    for (std::size_t o = 0; o < probs.size(); ++o) {
      if (probs[o] <= hilbert::kProbEps) continue;
      chosen[d.label] = d.outcomes.outcomes()[o].label;
      self(self, depth + 1, prob * probs[o]);
    }
    chosen.erase(d.label);
    sides[k] = ConeSide::Past;
  };
  descend(descend, 0, 1.0);
  return dist;
}

HkComparison hk_copy_inconsistency(scenarios::SingletConfig cfg) {
  cfg.copies = true;
  const Scenario with_copies = scenarios::singlet(cfg);
  scenarios::SingletConfig bare_cfg = cfg;
  bare_cfg.copies = false;
  const Scenario bare = scenarios::singlet(bare_cfg);

  const HkRegion region2 = hk_region_of(cfg.layout.aa1, bare);
  const HkRegion region3 = hk_region_of(cfg.layout.aa2, bare);
  if (region2.id() != 2 || region3.id() != 3) {
    throw ConfigError("copy devices must sit in regions 2 (AA1) and 3 (AA2)");
  }

  // Region states, each carrying the one reduction its region has seen; the
  // copies duplicate the regional spin state exactly.
  const StateVector in2 = hk_state(bare, {{"B", "+"}}, region2);
  const StateVector in3 = hk_state(bare, {{"A", "+"}}, region3);
  const Eigen::VectorXcd a_state = hilbert::factor_state(in2, "a");
  const Eigen::VectorXcd b_state = hilbert::factor_state(in3, "b");
  const StateVector copies = hilbert::tensor(
      StateVector::from_spinor(hilbert::SubsystemSpec::spin("c1"), a_state),
      StateVector::from_spinor(hilbert::SubsystemSpec::spin("c2"), b_state));
  const auto &c_outcomes = with_copies.detector("C").outcomes;

  HkComparison out;
  out.a_axis = cfg.a_axis;
  out.b_axis = cfg.b_axis;
  out.copy_basis = cfg.copy_basis;
  out.hk_conditional = hilbert::born_probability(copies, c_outcomes, "--");

  const auto dist = engine::joint_distribution(with_copies, {"A", "B", "C"});
  for (const auto &o : c_outcomes.outcomes()) out.joint_ab += dist.at({"+", "+", o.label});
  if (out.joint_ab <= hilbert::kProbEps) {
    throw ImpossibleBranchError("A+ together with B+ has zero probability");
  }
  out.psv_conditional = dist.at({"+", "+", "--"}) / out.joint_ab;
  return out;
}

}  // namespace psv::hellwig_kraus
