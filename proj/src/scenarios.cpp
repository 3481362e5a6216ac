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

#include "psv/scenarios.hpp"

#include <cmath>

#include "psv/errors.hpp"

namespace psv::scenarios {

using engine::DetectorEvent;
using engine::InteractionEvent;
using engine::Worldline;
using geometry::EventSide;
using geometry::Separation;
using hilbert::OutcomeSet;
using hilbert::Sign;
using hilbert::StateVector;
using hilbert::SubsystemSpec;

namespace {

void require_spacelike(const Event &x, const Event &y, double c,
                       const std::string &what) {
  const auto k = geometry::classify(x, y, c).kind;
  if (k == Separation::Timelike) {
    throw ConfigError(what + " must not be timelike separated");
  }
}

void require_causal_before(const Event &early, const Event &late, double c,
                           const std::string &what) {
  if (!(early.t < late.t) ||
      geometry::classify(early, late, c).kind != Separation::Timelike) {
    throw ConfigError(what);
  }
}

void require_behind_cone(const Event &e, const Event &apex, double c,
                         const std::string &what) {
  if (geometry::event_side_of_surface(e, geometry::Lcsh::cone(apex, c)) !=
      EventSide::Past) {
    throw ConfigError(what);
  }
}

void check_layout(const Layout &l, double c, bool with_copies, bool with_c) {
  require_spacelike(l.a, l.b, c, "detectors A and B");
  if (with_c) {
    require_spacelike(l.a, l.c, c, "detectors A and C");
    require_spacelike(l.b, l.c, c, "detectors B and C");
  }
  if (with_copies) {
    require_causal_before(l.aa1, l.a, c, "AA1 must lie on the a-branch before A");
    require_causal_before(l.aa2, l.b, c, "AA2 must lie on the b-branch before B");
    if (with_c) {
      require_behind_cone(l.aa1, l.c, c, "AA1 must lie in the past of C's cone");
      require_behind_cone(l.aa2, l.c, c, "AA2 must lie in the past of C's cone");
    }
  }
}

std::vector<Worldline> branch_worldlines(const Layout &l, bool with_copies) {
  std::vector<Worldline> w;
  if (with_copies) {
    w.push_back({"a", {l.source, l.aa1, l.a}});
    w.push_back({"b", {l.source, l.aa2, l.b}});
    w.push_back({"c1", {l.aa1, l.c}});
    w.push_back({"c2", {l.aa2, l.c}});
  } else {
    w.push_back({"a", {l.source, l.a}});
    w.push_back({"b", {l.source, l.b}});
  }
  return w;
}

std::size_t dims_of(const Layout &l) {
  const std::size_t d = l.a.dim();
  for (const Event *e : {&l.source, &l.b, &l.c, &l.aa1, &l.aa2}) {
    if (e->dim() != d) throw ConfigError("layout events disagree on dimension");
  }
  return d;
}

Event embed_event(const Event &e, std::size_t dim) {
  if (dim < 1 || dim > 3) throw ConfigError("spatial dimension must be 1, 2 or 3");
  if (e.dim() > dim) throw ConfigError("cannot embed into fewer dimensions");
  Event out = e;
  out.x.resize(dim, 0.0);
  return out;
}

StateVector ready_registers(std::vector<SubsystemSpec> regs) {
  std::vector<std::size_t> zeros(regs.size(), 0);
  return StateVector::basis(std::move(regs), zeros);
}

}  // namespace

Layout embed(const Layout &l, std::size_t dim) {
  return {embed_event(l.source, dim), embed_event(l.a, dim), embed_event(l.b, dim),
          embed_event(l.c, dim),      embed_event(l.aa1, dim), embed_event(l.aa2, dim)};
}

GhzConfig embed(const GhzConfig &cfg, std::size_t dim) {
  GhzConfig out = cfg;
  out.source = embed_event(cfg.source, dim);
  out.a = embed_event(cfg.a, dim);
  out.b = embed_event(cfg.b, dim);
  out.c = embed_event(cfg.c, dim);
  return out;
}

Scenario split_particle(const SplitParticleConfig &cfg) {
  const double total = std::norm(cfg.amp_a) + std::norm(cfg.amp_b);
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConfigError("split amplitudes must satisfy |ca|^2 + |cb|^2 = 1");
  }
  const Layout &l = cfg.layout;
  check_layout(l, cfg.c, true, true);

  Scenario s;
  s.name = "split";
  s.dim = dims_of(l);
  s.c = cfg.c;
  s.initial_surface = geometry::Lcsh::minus_infinity(cfg.c);

  const std::vector<SubsystemSpec> modes{
      SubsystemSpec::mode("a"), SubsystemSpec::mode("b"),
      SubsystemSpec::mode("c1"), SubsystemSpec::mode("c2")};
  // index = a b c1 c2 as binary digits
  std::vector<cplx> amps(16, 0.0);
  amps[0b1000] = cfg.amp_a;
  amps[0b0100] = cfg.amp_b;
  const StateVector particle(modes, amps);
  s.initial_state = hilbert::tensor(
      particle, ready_registers({SubsystemSpec::detector_register("A", 2),
                                 SubsystemSpec::detector_register("B", 2),
                                 SubsystemSpec::detector_register("C", 2)}));

  s.interactions.push_back({"AA1", l.aa1, {"a", "c1"}, hilbert::occupation_copy_gate()});
  s.interactions.push_back({"AA2", l.aa2, {"b", "c2"}, hilbert::occupation_copy_gate()});

  s.detectors.push_back({"A", l.a, OutcomeSet::occupation({"a"}, {"none", "fire"}),
                         "A", true, {0, 1}});
  s.detectors.push_back({"B", l.b, OutcomeSet::occupation({"b"}, {"none", "fire"}),
                         "B", true, {0, 1}});
  s.detectors.push_back(
      {"C", l.c, OutcomeSet::occupation({"c1", "c2"}, {"none", "c2", "c1", "both"}),
       "C", true, {0, 1, 1, 1}});

  s.charged_modes = {"a", "b", "c1", "c2"};
  s.worldlines = branch_worldlines(l, true);
  s.validate();
  return s;
}

Scenario singlet(const SingletConfig &cfg) {
  const Layout &l = cfg.layout;
  check_layout(l, cfg.c, cfg.copies, cfg.copies);

  Scenario s;
  s.name = cfg.copies ? "singlet-copies" : "singlet";
  s.dim = dims_of(l);
  s.c = cfg.c;
  s.initial_surface = geometry::Lcsh::minus_infinity(cfg.c);

  const auto kp = hilbert::axis_eigenstate(cfg.copy_basis, Sign::Plus);
  const auto km = hilbert::axis_eigenstate(cfg.copy_basis, Sign::Minus);
  // (|a k-> |b k+> - |a k+> |b k->) / sqrt2
  std::vector<cplx> pair(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      pair[2 * i + j] = (km(i) * kp(j) - kp(i) * km(j)) * hilbert::kInvSqrt2;
    }
  }
  StateVector psi({SubsystemSpec::spin("a"), SubsystemSpec::spin("b")}, pair);
  if (cfg.copies) {
    psi = hilbert::tensor(psi, StateVector::from_spinor(SubsystemSpec::spin("c1"), kp));
    psi = hilbert::tensor(psi, StateVector::from_spinor(SubsystemSpec::spin("c2"), kp));
  }
  std::vector<SubsystemSpec> regs{SubsystemSpec::detector_register("A", 3),
                                  SubsystemSpec::detector_register("B", 3)};
  if (cfg.copies) regs.push_back(SubsystemSpec::detector_register("C", 5));
  s.initial_state = hilbert::tensor(psi, ready_registers(regs));

  s.detectors.push_back({"A", l.a, OutcomeSet::spin("a", cfg.a_axis), "A", false, {1, 2}});
  s.detectors.push_back({"B", l.b, OutcomeSet::spin("b", cfg.b_axis), "B", false, {1, 2}});
  if (cfg.copies) {
    const hilbert::Matrix gate = hilbert::copy_gate(cfg.copy_basis);
    s.interactions.push_back({"AA1", l.aa1, {"a", "c1"}, gate});
    s.interactions.push_back({"AA2", l.aa2, {"b", "c2"}, gate});
    const Axis axes[] = {cfg.c1_axis.value_or(cfg.b_axis),
                         cfg.c2_axis.value_or(cfg.a_axis)};
    s.detectors.push_back({"C", l.c, OutcomeSet::spins({"c1", "c2"}, axes), "C",
                           false, {1, 2, 3, 4}});
  }
  s.worldlines = branch_worldlines(l, cfg.copies);
  s.validate();
  return s;
}

Scenario ghz(const GhzConfig &cfg) {
  require_spacelike(cfg.a, cfg.b, cfg.c_light, "detectors A and B");
  require_spacelike(cfg.a, cfg.c, cfg.c_light, "detectors A and C");
  require_spacelike(cfg.b, cfg.c, cfg.c_light, "detectors B and C");

  Scenario s;
  s.name = "ghz";
  s.dim = cfg.a.dim();
  s.c = cfg.c_light;
  s.initial_surface = geometry::Lcsh::minus_infinity(cfg.c_light);

  std::vector<cplx> amps(8, 0.0);
  amps[0b000] = hilbert::kInvSqrt2;   // |3+ 3+ 3+>
  amps[0b111] = -hilbert::kInvSqrt2;  // |3- 3- 3->
  const StateVector spins(
      {SubsystemSpec::spin("a"), SubsystemSpec::spin("b"), SubsystemSpec::spin("c")},
      amps);
  s.initial_state = hilbert::tensor(
      spins, ready_registers({SubsystemSpec::detector_register("A", 3),
                              SubsystemSpec::detector_register("B", 3),
                              SubsystemSpec::detector_register("C", 3)}));

  s.detectors.push_back({"A", cfg.a, OutcomeSet::spin("a", cfg.a_axis), "A", false, {1, 2}});
  s.detectors.push_back({"B", cfg.b, OutcomeSet::spin("b", cfg.b_axis), "B", false, {1, 2}});
  s.detectors.push_back({"C", cfg.c, OutcomeSet::spin("c", cfg.c_axis), "C", false, {1, 2}});
  s.worldlines = {{"a", {cfg.source, cfg.a}}, {"b", {cfg.source, cfg.b}},
                  {"c", {cfg.source, cfg.c}}};
  s.validate();
  return s;
}

}  // namespace psv::scenarios
