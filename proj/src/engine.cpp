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

#include "psv/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "psv/errors.hpp"

namespace psv::engine {

using geometry::EventSide;
using geometry::Separation;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool timelike(const Event &a, const Event &b, double c) {
  return geometry::classify(a, b, c).kind == Separation::Timelike;
}

std::size_t basis_index_of(const Matrix &rank_one_projector) {
  Eigen::Index idx = 0;
  rank_one_projector.diagonal().real().maxCoeff(&idx);
  return static_cast<std::size_t>(idx);
}

// Interactions sorted by time with ties broken by declaration index. This is
// a linear extension of the timelike order.
std::vector<std::size_t> forward_order(const Scenario &s,
                                       std::vector<std::size_t> batch) {
  std::stable_sort(batch.begin(), batch.end(), [&](std::size_t a, std::size_t b) {
    return s.interactions[a].at.t < s.interactions[b].at.t;
  });
  return batch;
}

// A second linear extension that, wherever the timelike order allows, runs
// later events first. Differs from forward_order on every spacelike pair.
std::vector<std::size_t> backward_order(const Scenario &s,
                                        std::vector<std::size_t> remaining) {
  std::vector<std::size_t> out;
  while (!remaining.empty()) {
    std::size_t pick = remaining.size();
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      const auto &ei = s.interactions[remaining[i]].at;
      const bool blocked = std::any_of(
          remaining.begin(), remaining.end(), [&](std::size_t other) {
            const auto &eo = s.interactions[other].at;
            return other != remaining[i] && eo.t < ei.t && timelike(eo, ei, s.c);
          });
      if (blocked) continue;
      if (pick == remaining.size() ||
          ei.t > s.interactions[remaining[pick]].at.t ||
          (ei.t == s.interactions[remaining[pick]].at.t &&
           remaining[i] > remaining[pick])) {
        pick = i;
      }
    }
    out.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

StateVector apply_sequence(const Scenario &s, StateVector psi,
                           const std::vector<std::size_t> &seq) {
  for (auto i : seq) {
    const auto &ev = s.interactions[i];
    psi = hilbert::apply_unitary(psi, ev.targets, ev.unitary);
  }
  return psi;
}

struct Batch {
  StateVector state;
  std::vector<std::string> names;
};

Batch apply_batch(const Scenario &s, const StateVector &psi,
                  const std::vector<std::size_t> &batch) {
  const auto fwd = forward_order(s, batch);
  Batch out{apply_sequence(s, psi, fwd), {}};
  for (auto i : fwd) out.names.push_back(s.interactions[i].name);
  if (fwd.size() < 2) return out;
  const auto bwd = backward_order(s, batch);
  if (bwd == fwd) return out;
  const StateVector alt = apply_sequence(s, psi, bwd);
  if (hilbert::phase_distance(out.state, alt) > kCommuteEps) {
    std::ostringstream os;
    os << "spacelike interactions do not commute:";
    for (auto i : fwd) os << " " << s.interactions[i].name;
    throw ConfigError(os.str());
  }
  return out;
}

// Everything in a step that does not depend on the chosen outcome.
struct Prepared {
  const DetectorEvent *detector;
  Lcsh after;
  Batch batch;
  std::vector<double> distribution;
};

Prepared prepare(const Scenario &s, const Lcsh &surface, const StateVector &psi,
                 const std::string &label) {
  const DetectorEvent &d = s.detector(label);
  Lcsh after = geometry::adjoin_apex(surface, d.at).with_side(geometry::Side::Minus);
  std::vector<std::size_t> due;
  for (std::size_t i = 0; i < s.interactions.size(); ++i) {
    const auto &at = s.interactions[i].at;
    if (geometry::event_side_of_surface(at, surface) == EventSide::Future &&
        geometry::event_side_of_surface(at, after) != EventSide::Future) {
      due.push_back(i);
    }
  }
  Batch batch = apply_batch(s, psi, due);
  auto dist = hilbert::born_distribution(batch.state, d.outcomes);
  return {&d, std::move(after), std::move(batch), std::move(dist)};
}

StepRecord measure(const Lcsh &before, const Prepared &p, std::size_t outcome) {
  const DetectorEvent &d = *p.detector;
  const auto &o = d.outcomes.outcomes()[outcome];
  const StateVector &psi = p.batch.state;
  const StateVector post = record_reading(d, psi, o.label);

  StepRecord rec;
  rec.detector = d.label;
  rec.before = before;
  rec.after = p.after.with_side(geometry::Side::Plus);
  rec.interactions = p.batch.names;
  rec.pre_state = psi.canonical_phase();
  rec.post_state = post.canonical_phase();
  rec.outcome = o.label;
  rec.probability = p.distribution[outcome];
  rec.distribution = p.distribution;
  const double pmax = *std::max_element(p.distribution.begin(), p.distribution.end());
  rec.reduction = !(pmax >= 1.0 - kCertEps);
  return rec;
}

std::size_t choose(const Prepared &p, OutcomeChoice &choice) {
  const auto &set = p.detector->outcomes;
  if (auto *label = std::get_if<std::string>(&choice)) {
    const std::size_t idx = set.find(*label);
    if (p.distribution[idx] <= hilbert::kProbEps) {
      throw ImpossibleBranchError("detector '" + p.detector->label +
                                  "' cannot read '" + *label + "'");
    }
    return idx;
  }
  Rng &rng = std::get<std::reference_wrapper<Rng>>(choice).get();
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t last_possible = 0;
  for (std::size_t i = 0; i < p.distribution.size(); ++i) {
    if (p.distribution[i] <= hilbert::kProbEps) continue;
    last_possible = i;
    cum += p.distribution[i];
    if (u < cum) return i;
  }
  return last_possible;
}

void require_valid_order(const Scenario &s, const ReductionOrder &order) {
  const auto violations = validate_reduction_order(s, order);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "reduction order contradicts time order:";
    for (const auto &v : violations) os << " " << v.earlier << "<" << v.later;
    throw OrderingError(os.str());
  }
}

template <typename Chooser>
RunRecord run_impl(const Scenario &s, const ReductionOrder &order,
                   Chooser &&chooser) {
  require_valid_order(s, order);
  RunRecord rec;
  rec.order = order;
  rec.initial_surface = s.initial_surface;
  rec.initial_state = s.initial_state.canonical_phase();
  rec.outcomes.resize(s.detectors.size());

  Lcsh surface = s.initial_surface.with_side(geometry::Side::Plus);
  StateVector psi = s.initial_state;
  for (const auto &label : order) {
    const Prepared p = prepare(s, surface, psi, label);
    OutcomeChoice choice = chooser(label);
    StepRecord st = measure(surface, p, choose(p, choice));
    rec.total_probability *= st.probability;
    rec.outcomes[s.detector_index(label)] = st.outcome;
    surface = st.after;
    psi = st.post_state;
    rec.steps.push_back(std::move(st));
  }

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < s.interactions.size(); ++i) {
    if (geometry::event_side_of_surface(s.interactions[i].at, surface) ==
        EventSide::Future) {
      rest.push_back(i);
    }
  }
  Batch tail = apply_batch(s, psi, rest);
  rec.final_interactions = std::move(tail.names);
  rec.final_state = tail.state.canonical_phase();
  return rec;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scenario

void Scenario::validate() const {
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  if (dim < 1 || dim > 3) throw ConfigError("spatial dimension must be 1, 2 or 3");
  if (initial_state.size() == 0) throw ConfigError("scenario has no initial state");
  if (std::abs(initial_surface.c() - c) > 1e-12) {
    throw ConfigError("initial surface uses a different c");
  }
  const auto check_event = [&](const Event &e, const std::string &what) {
    if (e.dim() != dim) {
      throw ConfigError(what + ": expected " + std::to_string(dim) +
                        " spatial coordinates");
    }
    if (geometry::event_side_of_surface(e, initial_surface) != EventSide::Future) {
      throw OrderingError(what + " is not in the future of the initial surface");
    }
  };

  std::set<std::string> names;
  for (const auto &ev : interactions) {
    if (!names.insert(ev.name).second) {
      throw ConfigError("duplicate interaction name '" + ev.name + "'");
    }
    check_event(ev.at, "interaction '" + ev.name + "'");
    std::size_t m = 1;
    for (const auto &t : ev.targets) m *= initial_state.spec(t).dim;
    if (static_cast<std::size_t>(ev.unitary.rows()) != m ||
        !hilbert::is_unitary(ev.unitary)) {
      throw ConfigError("interaction '" + ev.name +
                        "' needs a unitary of dimension " + std::to_string(m));
    }
  }

  std::set<std::string> labels;
  for (const auto &d : detectors) {
    if (!labels.insert(d.label).second) {
      throw ConfigError("duplicate detector label '" + d.label + "'");
    }
    check_event(d.at, "detector '" + d.label + "'");
    d.outcomes.validate();
    std::size_t m = 1;
    for (const auto &t : d.outcomes.targets()) m *= initial_state.spec(t).dim;
    if (static_cast<std::size_t>(d.outcomes.outcomes().front().projector.rows()) != m) {
      throw ConfigError("detector '" + d.label +
                        "' projectors do not match its targets");
    }
    const auto &reg = initial_state.spec(d.register_label);
    if (reg.kind != hilbert::SubsystemKind::DetectorRegister) {
      throw ConfigError("detector '" + d.label + "' register '" +
                        d.register_label + "' is not a register subsystem");
    }
    const auto &tg = d.outcomes.targets();
    if (std::find(tg.begin(), tg.end(), d.register_label) != tg.end()) {
      throw ConfigError("detector '" + d.label + "' measures its own register");
    }
    if (d.pointers.size() != d.outcomes.size()) {
      throw ConfigError("detector '" + d.label + "' needs one pointer per outcome");
    }
    for (auto ptr : d.pointers) {
      if (ptr >= reg.dim) {
        throw ConfigError("detector '" + d.label + "' pointer out of range");
      }
    }
    if (d.absorbing) {
      for (const auto &t : tg) {
        if (initial_state.spec(t).kind != hilbert::SubsystemKind::Mode) {
          throw ConfigError("absorbing detector '" + d.label +
                            "' may only target modes");
        }
      }
      for (const auto &o : d.outcomes.outcomes()) {
        const Matrix &p = o.projector;
        const std::size_t k = basis_index_of(p);
        Matrix expect = Matrix::Zero(p.rows(), p.cols());
        expect(k, k) = 1.0;
        if ((p - expect).cwiseAbs().maxCoeff() > hilbert::kMatrixEps) {
          throw ConfigError("absorbing detector '" + d.label +
                            "' needs occupation-basis projectors");
        }
      }
    }
  }

  for (const auto &label : charged_modes) {
    if (initial_state.spec(label).kind != hilbert::SubsystemKind::Mode) {
      throw ConfigError("charged subsystem '" + label + "' is not a mode");
    }
  }
  for (const auto &w : worldlines) {
    for (const auto &p : w.points) {
      if (p.dim() != dim) throw ConfigError("worldline '" + w.label + "' has wrong dimension");
    }
  }
}

const DetectorEvent &Scenario::detector(const std::string &label) const {
  return detectors[detector_index(label)];
}

std::size_t Scenario::detector_index(const std::string &label) const {
  for (std::size_t i = 0; i < detectors.size(); ++i) {
    if (detectors[i].label == label) return i;
  }
  throw ConfigError("unknown detector '" + label + "'");
}

std::vector<std::string> Scenario::detector_labels() const {
  std::vector<std::string> out;
  for (const auto &d : detectors) out.push_back(d.label);
  return out;
}

std::vector<Event> Scenario::all_events() const {
  std::vector<Event> out;
  for (const auto &d : detectors) out.push_back(d.at);
  for (const auto &i : interactions) out.push_back(i.at);
  return out;
}

geometry::Region Scenario::support_region() const {
  std::vector<Event> events = all_events();
  for (const auto &w : worldlines) {
    events.insert(events.end(), w.points.begin(), w.points.end());
  }
  if (events.empty()) {
    return {geometry::SpatialPoint(dim, 0.0), geometry::SpatialPoint(dim, 0.0)};
  }
  return geometry::Region::bounding(events);
}

geometry::ProbeSet Scenario::probes() const {
  auto probes = geometry::ProbeSet::grid(support_region());
  for (const auto &e : all_events()) probes.add(e.x);
  return probes;
}

// ---------------------------------------------------------------------------
// Orders

std::vector<OrderViolation> validate_reduction_order(const Scenario &s,
                                                     const ReductionOrder &order) {
  if (order.size() != s.detectors.size()) {
    throw ConfigError("reduction order must list every detector exactly once");
  }
  std::vector<std::size_t> idx;
  for (const auto &label : order) idx.push_back(s.detector_index(label));
  if (std::set<std::size_t>(idx.begin(), idx.end()).size() != idx.size()) {
    throw ConfigError("reduction order lists a detector twice");
  }
  std::vector<OrderViolation> out;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const auto &first = s.detectors[idx[a]];
      const auto &second = s.detectors[idx[b]];
      if (timelike(first.at, second.at, s.c) && second.at.t < first.at.t) {
        out.push_back({second.label, first.label});
      }
    }
  }
  return out;
}

std::vector<ReductionOrder> enumerate_valid_orders(const Scenario &s) {
  const std::size_t n = s.detectors.size();
  if (n > kMaxOrderDetectors) {
    throw ConfigError("refusing to enumerate orders of " + std::to_string(n) +
                      " detectors (limit " + std::to_string(kMaxOrderDetectors) +
                      ")");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<ReductionOrder> out;
  do {
    ReductionOrder order;
    for (auto i : perm) order.push_back(s.detectors[i].label);
    if (validate_reduction_order(s, order).empty()) out.push_back(std::move(order));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Runs

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : gen_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

double Rng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

StateVector record_reading(const DetectorEvent &d, const StateVector &psi,
                           const std::string &outcome) {
  const std::size_t k = d.outcomes.find(outcome);
  StateVector post = hilbert::project_and_normalize(psi, d.outcomes, outcome);
  if (d.absorbing) {
    std::size_t m = 1;
    for (const auto &t : d.outcomes.targets()) m *= psi.spec(t).dim;
    post = hilbert::apply_unitary(
        post, d.outcomes.targets(),
        hilbert::pointer_shift(m, basis_index_of(d.outcomes.outcomes()[k].projector)));
  }
  const std::string reg[] = {d.register_label};
  return hilbert::apply_unitary(
      post, reg,
      hilbert::pointer_shift(psi.spec(d.register_label).dim, d.pointers[k]));
}

StepRecord step(const Scenario &s, const Lcsh &surface, const StateVector &psi,
                const std::string &detector, OutcomeChoice choice) {
  const Prepared p = prepare(s, surface, psi, detector);
  return measure(surface, p, choose(p, choice));
}

RunRecord run(const Scenario &s, const ReductionOrder &order,
              const std::map<std::string, std::string> &fixed_outcomes) {
  for (const auto &label : order) {
    if (!fixed_outcomes.contains(label)) {
      throw ConfigError("no outcome given for detector '" + label + "'");
    }
  }
  return run_impl(s, order, [&](const std::string &label) -> OutcomeChoice {
    return fixed_outcomes.at(label);
  });
}

RunRecord run(const Scenario &s, const ReductionOrder &order, Rng &rng) {
  return run_impl(s, order,
                  [&](const std::string &) -> OutcomeChoice { return std::ref(rng); });
}

double JointDistribution::at(const OutcomeTuple &t) const {
  const auto it = probabilities.find(t);
  return it == probabilities.end() ? 0.0 : it->second;
}

double JointDistribution::total() const {
  double sum = 0.0;
  for (const auto &[_, p] : probabilities) sum += p;
  return sum;
}

double max_deviation(const JointDistribution &a, const JointDistribution &b) {
  if (a.detectors != b.detectors) {
    throw ConfigError("distributions are over different detectors");
  }
  double d = 0.0;
  for (const auto &[t, p] : a.probabilities) d = std::max(d, std::abs(p - b.at(t)));
  for (const auto &[t, p] : b.probabilities) d = std::max(d, std::abs(p - a.at(t)));
  return d;
}

JointDistribution joint_distribution(const Scenario &s,
                                     const ReductionOrder &order) {
  require_valid_order(s, order);
  double branches = 1.0;
  for (const auto &d : s.detectors) branches *= static_cast<double>(d.outcomes.size());
  if (branches > kMaxBranches) {
    throw ConfigError("joint distribution would visit " +
                      std::to_string(branches) + " branches");
  }

  JointDistribution dist;
  dist.detectors = s.detector_labels();
  OutcomeTuple tuple(s.detectors.size());

  // Depth-first over the order; zero-probability outcomes are pruned.
  const auto descend = [&](auto &self, std::size_t depth, const Lcsh &surface,
                           const StateVector &psi, double prob) -> void {
    if (depth == order.size()) {
      dist.probabilities[tuple] += prob;
      return;
    }
    const Prepared p = prepare(s, surface, psi, order[depth]);
    const std::size_t slot = s.detector_index(order[depth]);
    for (std::size_t k = 0; k < p.distribution.size(); ++k) {
      if (p.distribution[k] <= hilbert::kProbEps) continue;
      const StepRecord st = measure(surface, p, k);
      tuple[slot] = st.outcome;
      self(self, depth + 1, st.after, st.post_state, prob * st.probability);
    }
  };
  descend(descend, 0, s.initial_surface.with_side(geometry::Side::Plus),
          s.initial_state, 1.0);
  return dist;
}

double SampleResult::frequency(const OutcomeTuple &t) const {
  const auto it = counts.find(t);
  if (it == counts.end() || n == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(n);
}

std::vector<OutcomeTuple> sample_tuples(const Scenario &s,
                                        const ReductionOrder &order,
                                        std::uint64_t n, std::uint64_t seed,
                                        unsigned threads) {
  if (n == 0) throw ConfigError("sample count must be at least 1");
  require_valid_order(s, order);
  std::vector<OutcomeTuple> out(n);
  const auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      Rng rng(seed, i);
      out[i] = run(s, order, rng).outcomes;
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2 * threads) {
    work(0, n);
    return out;
  }
  std::vector<std::jthread> pool;
  const std::uint64_t chunk = (n + threads - 1) / threads;
  for (std::uint64_t b = 0; b < n; b += chunk) {
    pool.emplace_back(work, b, std::min(n, b + chunk));
  }
  pool.clear();
  return out;
}

SampleResult sample(const Scenario &s, const ReductionOrder &order,
                    std::uint64_t n, std::uint64_t seed, unsigned threads) {
  SampleResult res;
  res.detectors = s.detector_labels();
  res.n = n;
  for (auto &t : sample_tuples(s, order, n, seed, threads)) ++res.counts[t];
  return res;
}

// ---------------------------------------------------------------------------
// States on arbitrary surfaces

HyperplaneState state_on_hyperplane(const Scenario &s, const RunRecord &record,
                                    const Lcsh &query) {
  if (!query.apexes().empty() && query.c() < s.c - 1e-12) {
    throw ConfigError("query surface is not achronal (its cones are steeper than c)");
  }
  auto probes = s.probes();
  probes.add_apexes(query);

  const auto start = geometry::relate(query, record.initial_surface, probes);
  if (start == geometry::SurfaceRelation::Past) {
    return Undefined{"precedes the initial surface", ""};
  }
  if (start == geometry::SurfaceRelation::Crossing) {
    return Undefined{"crosses the initial surface", ""};
  }

  std::size_t k = 0;
  for (std::size_t i = 0; i < record.steps.size(); ++i) {
    switch (geometry::relate(query, record.steps[i].after, probes)) {
      case geometry::SurfaceRelation::Crossing:
        return Undefined{"crosses reduction surface S" + std::to_string(i + 1),
                         record.steps[i].detector};
      case geometry::SurfaceRelation::Future:
      case geometry::SurfaceRelation::Coincident:
        k = i + 1;
        break;
      case geometry::SurfaceRelation::Past:
        break;
    }
  }

  const Lcsh &base_surface = k == 0 ? record.initial_surface : record.steps[k - 1].after;
  const StateVector &base = k == 0 ? record.initial_state : record.steps[k - 1].post_state;
  std::vector<std::size_t> due;
  for (std::size_t i = 0; i < s.interactions.size(); ++i) {
    const auto &at = s.interactions[i].at;
    if (geometry::event_side_of_surface(at, base_surface) == EventSide::Future &&
        geometry::event_side_of_surface(at, query) != EventSide::Future) {
      due.push_back(i);
    }
  }
  return apply_batch(s, base, due).state.canonical_phase();
}

StateVector apply_interactions(const Scenario &s, const StateVector &psi,
                               const std::vector<std::string> &names) {
  std::vector<std::size_t> batch;
  for (const auto &name : names) {
    const auto it = std::find_if(s.interactions.begin(), s.interactions.end(),
                                 [&](const auto &ev) { return ev.name == name; });
    if (it == s.interactions.end()) {
      throw ConfigError("unknown interaction '" + name + "'");
    }
    batch.push_back(static_cast<std::size_t>(it - s.interactions.begin()));
  }
  return apply_batch(s, psi, batch).state;
}

}  // namespace psv::engine
