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

#include "psv/serialize.hpp"

#include <fstream>
#include <sstream>

#include "psv/errors.hpp"

namespace psv::serialize {

using engine::DetectorEvent;
using engine::InteractionEvent;
using hilbert::cplx;
using hilbert::Matrix;

namespace {

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json &j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError("complex numbers are [re, im] pairs");
  }
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

std::vector<std::string> strings(const json &j) {
  return j.get<std::vector<std::string>>();
}

json subsystems_to_json(const std::vector<hilbert::SubsystemSpec> &specs) {
  json arr = json::array();
  for (const auto &s : specs) {
    arr.push_back({{"label", s.label}, {"dim", s.dim}, {"kind", to_string(s.kind)}});
  }
  return arr;
}

std::vector<hilbert::SubsystemSpec> subsystems_from_json(const json &j) {
  std::vector<hilbert::SubsystemSpec> specs;
  for (const auto &s : j) {
    specs.push_back({s.at("label").get<std::string>(), s.at("dim").get<std::size_t>(),
                     hilbert::parse_subsystem_kind(s.at("kind").get<std::string>())});
  }
  return specs;
}

std::vector<cplx> amplitudes_from_json(const json &j) {
  std::vector<cplx> amps;
  for (const auto &z : j) amps.push_back(complex_from_json(z));
  return amps;
}

json step_to_json(const engine::StepRecord &st) {
  return {{"detector", st.detector},
          {"outcome", st.outcome},
          {"probability", st.probability},
          {"reduction", st.reduction},
          {"distribution", st.distribution},
          {"interactions", st.interactions},
          {"surface_before", to_json(st.before)},
          {"surface_after", to_json(st.after)},
          {"pre_state", to_json(st.pre_state)},
          {"post_state", to_json(st.post_state)}};
}

engine::StepRecord step_from_json(const json &j) {
  engine::StepRecord st;
  st.detector = j.at("detector").get<std::string>();
  st.outcome = j.at("outcome").get<std::string>();
  st.probability = j.at("probability").get<double>();
  st.reduction = j.at("reduction").get<bool>();
  st.distribution = j.at("distribution").get<std::vector<double>>();
  st.interactions = strings(j.at("interactions"));
  st.before = lcsh_from_json(j.at("surface_before"));
  st.after = lcsh_from_json(j.at("surface_after"));
  st.pre_state = state_from_json(j.at("pre_state"));
  st.post_state = state_from_json(j.at("post_state"));
  return st;
}

// Default pointers 1..n when the register has room for them.
std::vector<std::size_t> default_pointers(std::size_t outcomes, std::size_t reg_dim,
                                          const std::string &label) {
  if (reg_dim <= outcomes) {
    throw ConfigError("detector '" + label +
                      "' needs explicit pointers (register too small for defaults)");
  }
  std::vector<std::size_t> p(outcomes);
  for (std::size_t i = 0; i < outcomes; ++i) p[i] = i + 1;
  return p;
}

InteractionEvent interaction_from_json(const json &j) {
  InteractionEvent ev;
  ev.name = j.at("name").get<std::string>();
  ev.at = event_from_json(j.at("at"));
  ev.targets = strings(j.at("subsystems"));
  if (j.contains("unitary")) {
    ev.unitary = matrix_from_json(j.at("unitary"));
  } else if (j.contains("gate")) {
    const json &g = j.at("gate");
    const json &basis = g.at("copy_basis");
    if (basis.is_string() && basis.get<std::string>() == "occupation") {
      ev.unitary = hilbert::occupation_copy_gate();
    } else {
      ev.unitary = hilbert::copy_gate(axis_from_json(basis));
    }
  } else if (j.contains("hamiltonian")) {
    ev.unitary = hilbert::evolution_operator(matrix_from_json(j.at("hamiltonian")),
                                             j.at("duration").get<double>());
  } else {
    throw ConfigError("interaction '" + ev.name +
                      "' needs 'unitary', 'gate' or 'hamiltonian'");
  }
  return ev;
}

DetectorEvent detector_from_json(const json &j, const hilbert::StateVector &psi) {
  DetectorEvent d;
  d.label = j.at("label").get<std::string>();
  d.at = event_from_json(j.at("at"));
  d.register_label = j.at("register").get<std::string>();
  d.absorbing = j.value("absorbing", false);
  if (j.contains("projectors")) {
    std::vector<hilbert::Outcome> outs;
    for (const auto &p : j.at("projectors")) {
      outs.push_back({p.at("label").get<std::string>(), matrix_from_json(p.at("matrix"))});
    }
    d.outcomes = hilbert::OutcomeSet(strings(j.at("targets")), std::move(outs));
  } else if (j.contains("axis")) {
    const std::string target = j.contains("targets")
                                   ? strings(j.at("targets")).at(0)
                                   : j.at("target").get<std::string>();
    d.outcomes = hilbert::OutcomeSet::spin(target, axis_from_json(j.at("axis")));
  } else if (j.contains("axes")) {
    std::vector<hilbert::Axis> axes;
    for (const auto &a : j.at("axes")) axes.push_back(axis_from_json(a));
    d.outcomes = hilbert::OutcomeSet::spins(strings(j.at("targets")), axes);
  } else if (j.contains("occupation")) {
    d.outcomes = hilbert::OutcomeSet::occupation(strings(j.at("targets")),
                                                 strings(j.at("occupation")));
  } else {
    throw ConfigError("detector '" + d.label +
                      "' needs 'projectors', 'axis', 'axes' or 'occupation'");
  }
  if (j.contains("pointers")) {
    d.pointers = j.at("pointers").get<std::vector<std::size_t>>();
  } else {
    d.pointers = default_pointers(d.outcomes.size(), psi.spec(d.register_label).dim,
                                  d.label);
  }
  return d;
}

}  // namespace

json to_json(const geometry::Event &e) { return {{"t", e.t}, {"x", e.x}}; }

geometry::Event event_from_json(const json &j) {
  geometry::Event e;
  e.t = j.at("t").get<double>();
  const json &x = j.at("x");
  e.x = x.is_number() ? std::vector<double>{x.get<double>()} : x.get<std::vector<double>>();
  return e;
}

json to_json(const geometry::Lcsh &s) {
  json j;
  if (s.initial_time()) j["t0"] = *s.initial_time();
  else j["t0"] = "minus_infinity";
  j["c"] = s.c();
  j["side"] = to_string(s.side());
  json apexes = json::array();
  for (const auto &a : s.apexes()) apexes.push_back(to_json(a));
  j["apexes"] = apexes;
  return j;
}

geometry::Lcsh lcsh_from_json(const json &j) {
  const double c = j.value("c", 1.0);
  const json &t0 = j.at("t0");
  geometry::Lcsh s;
  if (t0.is_string()) {
    if (t0.get<std::string>() != "minus_infinity") {
      throw ConfigError("t0 must be a number or \"minus_infinity\"");
    }
    s = geometry::Lcsh::minus_infinity(c);
  } else {
    s = geometry::Lcsh::flat(t0.get<double>(), c);
  }
  if (j.contains("apexes")) {
    for (const auto &a : j.at("apexes")) s = geometry::adjoin_apex(s, event_from_json(a));
  }
  const std::string side = j.value("side", "exact");
  if (side == "minus") s = s.with_side(geometry::Side::Minus);
  else if (side == "plus") s = s.with_side(geometry::Side::Plus);
  else if (side == "exact") s = s.with_side(geometry::Side::Exact);
  else throw ConfigError("unknown surface side '" + side + "'");
  return s;
}

json to_json(const hilbert::Axis &a) {
  return {{"xyz", {a.x(), a.y(), a.z()}}};
}

hilbert::Axis axis_from_json(const json &j) {
  if (j.is_string()) return hilbert::Axis::parse(j.get<std::string>());
  if (j.contains("xyz")) {
    const auto v = j.at("xyz").get<std::vector<double>>();
    if (v.size() != 3) throw ConfigError("xyz axis needs three components");
    return {v[0], v[1], v[2]};
  }
  return hilbert::Axis::from_angles(j.at("theta").get<double>(), j.at("phi").get<double>());
}

json to_json(const Matrix &m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json &j) {
  const std::size_t rows = j.size();
  if (rows == 0) throw ConfigError("empty matrix");
  const std::size_t cols = j.at(0).size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j.at(r).size() != cols) throw ConfigError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j.at(r).at(c));
  }
  return m;
}

json to_json(const hilbert::StateVector &psi) {
  json amps = json::array();
  for (auto z : psi.amplitudes()) amps.push_back(complex_to_json(z));
  return {{"subsystems", subsystems_to_json(psi.subsystems())}, {"amplitudes", amps}};
}

hilbert::StateVector state_from_json(const json &j) {
  return hilbert::StateVector(subsystems_from_json(j.at("subsystems")),
                              amplitudes_from_json(j.at("amplitudes")));
}

json to_json(const engine::Scenario &s) {
  json j;
  j["name"] = s.name;
  j["dim"] = s.dim;
  j["c"] = s.c;
  j["subsystems"] = subsystems_to_json(s.initial_state.subsystems());
  j["initial_state"] = to_json(s.initial_state);
  j["initial_surface"] = to_json(s.initial_surface);
  json inter = json::array();
  for (const auto &ev : s.interactions) {
    inter.push_back({{"name", ev.name},
                     {"at", to_json(ev.at)},
                     {"subsystems", ev.targets},
                     {"unitary", to_json(ev.unitary)}});
  }
  j["interactions"] = inter;
  json dets = json::array();
  for (const auto &d : s.detectors) {
    json projectors = json::array();
    for (const auto &o : d.outcomes.outcomes()) {
      projectors.push_back({{"label", o.label}, {"matrix", to_json(o.projector)}});
    }
    dets.push_back({{"label", d.label},
                    {"at", to_json(d.at)},
                    {"targets", d.outcomes.targets()},
                    {"projectors", projectors},
                    {"pointers", d.pointers},
                    {"register", d.register_label},
                    {"absorbing", d.absorbing}});
  }
  j["detectors"] = dets;
  j["charged_modes"] = s.charged_modes;
  json wl = json::array();
  for (const auto &w : s.worldlines) {
    json pts = json::array();
    for (const auto &p : w.points) pts.push_back(to_json(p));
    wl.push_back({{"label", w.label}, {"points", pts}});
  }
  j["worldlines"] = wl;
  return j;
}

engine::Scenario scenario_from_json(const json &j) {
  try {
    engine::Scenario s;
    s.name = j.value("name", "custom");
    s.dim = j.value("dim", std::size_t{1});
    s.c = j.value("c", 1.0);
    const json &init = j.at("initial_state");
    auto specs = subsystems_from_json(init.contains("subsystems") ? init.at("subsystems")
                                                                  : j.at("subsystems"));
    if (j.contains("subsystems") && subsystems_from_json(j.at("subsystems")) != specs) {
      throw ConfigError("initial_state subsystems differ from top-level subsystems");
    }
    s.initial_state = hilbert::StateVector::normalized(
        std::move(specs), amplitudes_from_json(init.at("amplitudes")));
    if (j.contains("initial_surface")) {
      json surf = j.at("initial_surface");
      if (!surf.contains("c")) surf["c"] = s.c;
      s.initial_surface = lcsh_from_json(surf);
    } else {
      s.initial_surface = geometry::Lcsh::minus_infinity(s.c);
    }
    for (const auto &ev : j.value("interactions", json::array())) {
      s.interactions.push_back(interaction_from_json(ev));
    }
    for (const auto &d : j.value("detectors", json::array())) {
      s.detectors.push_back(detector_from_json(d, s.initial_state));
    }
    s.charged_modes = j.value("charged_modes", std::vector<std::string>{});
    for (const auto &w : j.value("worldlines", json::array())) {
      engine::Worldline line{w.at("label").get<std::string>(), {}};
      for (const auto &p : w.at("points")) line.points.push_back(event_from_json(p));
      s.worldlines.push_back(std::move(line));
    }
    s.validate();
    return s;
  } catch (const json::exception &e) {
    throw ConfigError(std::string("malformed scenario JSON: ") + e.what());
  }
}

json to_json(const engine::RunRecord &r) {
  json steps = json::array();
  for (const auto &st : r.steps) steps.push_back(step_to_json(st));
  return {{"order", r.order},
          {"outcomes", r.outcomes},
          {"total_probability", r.total_probability},
          {"initial_surface", to_json(r.initial_surface)},
          {"initial_state", to_json(r.initial_state)},
          {"steps", steps},
          {"final_interactions", r.final_interactions},
          {"final_state", to_json(r.final_state)}};
}

engine::RunRecord record_from_json(const json &j) {
  try {
    engine::RunRecord r;
    r.order = strings(j.at("order"));
    r.outcomes = strings(j.at("outcomes"));
    r.total_probability = j.at("total_probability").get<double>();
    r.initial_surface = lcsh_from_json(j.at("initial_surface"));
    r.initial_state = state_from_json(j.at("initial_state"));
    for (const auto &st : j.at("steps")) r.steps.push_back(step_from_json(st));
    r.final_interactions = strings(j.at("final_interactions"));
    r.final_state = state_from_json(j.at("final_state"));
    return r;
  } catch (const json::exception &e) {
    throw ConfigError(std::string("malformed run record JSON: ") + e.what());
  }
}

json to_json(const engine::JointDistribution &d) {
  json entries = json::array();
  for (const auto &[t, p] : d.probabilities) {
    entries.push_back({{"outcomes", t}, {"probability", p}});
  }
  return {{"detectors", d.detectors}, {"entries", entries}};
}

engine::JointDistribution distribution_from_json(const json &j) {
  try {
    engine::JointDistribution d;
    d.detectors = strings(j.at("detectors"));
    for (const auto &e : j.at("entries")) {
      d.probabilities[strings(e.at("outcomes"))] = e.at("probability").get<double>();
    }
    return d;
  } catch (const json::exception &e) {
    throw ConfigError(std::string("malformed distribution JSON: ") + e.what());
  }
}

json to_json(const engine::SampleResult &r) {
  json entries = json::array();
  for (const auto &[t, n] : r.counts) {
    entries.push_back({{"outcomes", t}, {"count", n}, {"frequency", r.frequency(t)}});
  }
  return {{"detectors", r.detectors}, {"n", r.n}, {"entries", entries}};
}

json to_json(const hellwig_kraus::HkComparison &c) {
  return {{"hk", c.hk_conditional},
          {"psv", c.psv_conditional},
          {"joint_ab", c.joint_ab},
          {"axes",
           {{"i", c.a_axis.describe()}, {"j", c.b_axis.describe()}, {"k", c.copy_basis.describe()}}}};
}

engine::Scenario load_scenario(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace psv::serialize
