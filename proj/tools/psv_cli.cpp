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

// psv: command-line front end for the reduction simulator.
//
//   psv dist --scenario singlet --axes i=z,j=x
//   psv orders --scenario ghz
//   psv compare-hk --axes i=x,j=z
//
// Exit codes: 0 ok, 1 invalid input, 2 impossible outcome, 3 I/O.

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psv/diagram.hpp"
#include "psv/engine.hpp"
#include "psv/errors.hpp"
#include "psv/hellwig_kraus.hpp"
#include "psv/kernels.hpp"
#include "psv/scenarios.hpp"
#include "psv/serialize.hpp"

namespace {

using psv::ConfigError;
using psv::engine::ReductionOrder;
using psv::engine::Scenario;
using psv::hilbert::Axis;
using json = psv::serialize::json;

struct Options {
  std::string scenario = "singlet";
  std::string order;
  std::string axes;
  std::string outcomes;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool json = false;
  bool copies = false;
  bool ascii = false;
  std::string out;
  std::optional<std::size_t> dim;
  std::optional<double> c;
  std::string kernels = "auto";
};

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

// "k=v,k=v"; a token without '=' continues the previous value so that
// "i=1.2,0.5" keeps the theta,phi pair together.
std::map<std::string, std::string> parse_pairs(const std::string &text) {
  std::map<std::string, std::string> out;
  std::string last;
  for (const auto &tok : split(text, ',')) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) {
      if (last.empty()) throw ConfigError("expected key=value in '" + text + "'");
      out[last] += "," + tok;
      continue;
    }
    last = tok.substr(0, eq);
    out[last] = tok.substr(eq + 1);
  }
  return out;
}

// Unicode minus signs are accepted in outcome labels.
std::string normalize_sign(std::string s) {
  const std::string minus = "\xE2\x88\x92";
  for (auto p = s.find(minus); p != std::string::npos; p = s.find(minus)) {
    s.replace(p, minus.size(), "-");
  }
  return s;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<Axis> axis_opt(const std::map<std::string, std::string> &axes,
                             std::initializer_list<const char *> keys) {
  for (const char *k : keys) {
    if (const auto it = axes.find(k); it != axes.end()) return Axis::parse(it->second);
  }
  return std::nullopt;
}

void check_axis_keys(const std::map<std::string, std::string> &axes) {
  static const std::vector<std::string> known{"i", "j", "k", "A", "B", "C", "c1", "c2"};
  for (const auto &[k, _] : axes) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw ConfigError("unknown axis key '" + k + "' (use i, j, k, A, B, C, c1, c2)");
    }
  }
}

psv::scenarios::SingletConfig singlet_config(const Options &o) {
  const auto axes = parse_pairs(o.axes);
  check_axis_keys(axes);
  psv::scenarios::SingletConfig cfg;
  if (auto a = axis_opt(axes, {"i", "A"})) cfg.a_axis = *a;
  if (auto a = axis_opt(axes, {"j", "B"})) cfg.b_axis = *a;
  if (auto a = axis_opt(axes, {"k"})) cfg.copy_basis = *a;
  cfg.c1_axis = axis_opt(axes, {"c1"});
  cfg.c2_axis = axis_opt(axes, {"c2"});
  cfg.copies = o.copies;
  if (o.dim) cfg.layout = psv::scenarios::embed(cfg.layout, *o.dim);
  if (o.c) cfg.c = *o.c;
  return cfg;
}

Scenario build_scenario(const Options &o) {
  const std::string &name = o.scenario;
  if (name == "singlet" || name == "singlet-copies") {
    Options copy = o;
    copy.copies = o.copies || name == "singlet-copies";
    return psv::scenarios::singlet(singlet_config(copy));
  }
  if (name == "split") {
    psv::scenarios::SplitParticleConfig cfg;
    if (o.dim) cfg.layout = psv::scenarios::embed(cfg.layout, *o.dim);
    if (o.c) cfg.c = *o.c;
    return psv::scenarios::split_particle(cfg);
  }
  if (name == "ghz") {
    const auto axes = parse_pairs(o.axes);
    check_axis_keys(axes);
    psv::scenarios::GhzConfig cfg;
    if (auto a = axis_opt(axes, {"i", "A"})) cfg.a_axis = *a;
    if (auto a = axis_opt(axes, {"j", "B"})) cfg.b_axis = *a;
    if (auto a = axis_opt(axes, {"k", "C"})) cfg.c_axis = *a;
    if (o.dim) cfg = psv::scenarios::embed(cfg, *o.dim);
    if (o.c) cfg.c_light = *o.c;
    return psv::scenarios::ghz(cfg);
  }
  if (o.dim || o.c || !o.axes.empty()) {
    throw ConfigError("--d, --c and --axes apply to built-in scenarios only");
  }
  return psv::serialize::load_scenario(name);
}

ReductionOrder order_of(const Options &o, const Scenario &s) {
  if (o.order.empty()) return s.detector_labels();
  return split(o.order, ',');
}

std::map<std::string, std::string> fixed_outcomes(const Options &o, const Scenario &s) {
  std::map<std::string, std::string> out;
  for (const auto &[key, value] : parse_pairs(normalize_sign(o.outcomes))) {
    std::string label = key;
    for (const auto &d : s.detectors) {
      if (lower(d.label) == lower(key)) label = d.label;
    }
    s.detector(label);  // throws on unknown detector
    out[label] = value;
  }
  return out;
}

void emit(const Options &o, const json &j) {
  if (o.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    psv::diagram::write_file(o.out, j.dump(2) + "\n");
  }
}

std::string fmt(double p) {
  std::ostringstream os;
  os << std::setprecision(12) << p;
  return os.str();
}

std::string join(const std::vector<std::string> &v, const char *sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

psv::engine::RunRecord do_run(const Options &o, const Scenario &s) {
  const ReductionOrder order = order_of(o, s);
  if (o.outcomes.empty()) {
    psv::engine::Rng rng(o.seed);
    return psv::engine::run(s, order, rng);
  }
  return psv::engine::run(s, order, fixed_outcomes(o, s));
}

int cmd_run(const Options &o) {
  const Scenario s = build_scenario(o);
  const auto rec = do_run(o, s);
  if (o.json) {
    emit(o, psv::serialize::to_json(rec));
    return 0;
  }
  std::cout << "scenario " << s.name << ", order " << join(rec.order, ",") << "\n";
  for (std::size_t k = 0; k < rec.steps.size(); ++k) {
    const auto &st = rec.steps[k];
    std::cout << "  S" << k + 1 << ": " << st.detector << " -> " << st.outcome
              << "  p=" << fmt(st.probability)
              << (st.reduction ? "  reduction" : "  no reduction");
    if (!st.interactions.empty()) std::cout << "  (after " << join(st.interactions, ",") << ")";
    std::cout << "\n";
  }
  if (!rec.final_interactions.empty()) {
    std::cout << "  then " << join(rec.final_interactions, ",") << "\n";
  }
  std::cout << "outcomes (" << join(s.detector_labels(), ",") << ") = ("
            << join(rec.outcomes, ",") << "), total probability " << fmt(rec.total_probability)
            << "\n";
  return 0;
}

int cmd_dist(const Options &o) {
  const Scenario s = build_scenario(o);
  const auto dist = psv::engine::joint_distribution(s, order_of(o, s));
  if (o.json) {
    emit(o, psv::serialize::to_json(dist));
    return 0;
  }
  std::cout << join(dist.detectors, " ") << "  probability\n";
  for (const auto &[t, p] : dist.probabilities) {
    std::cout << join(t, " ") << "  " << fmt(p) << "\n";
  }
  return 0;
}

int cmd_orders(const Options &o) {
  const Scenario s = build_scenario(o);
  const auto orders = psv::engine::enumerate_valid_orders(s);
  std::vector<psv::engine::JointDistribution> dists;
  double dev = 0.0;
  for (const auto &order : orders) {
    dists.push_back(psv::engine::joint_distribution(s, order));
    dev = std::max(dev, psv::engine::max_deviation(dists.front(), dists.back()));
  }
  if (o.json) {
    json j;
    j["orders"] = orders;
    j["max_deviation"] = dev;
    emit(o, j);
    return 0;
  }
  std::cout << orders.size() << " valid reduction orders\n";
  for (const auto &order : orders) std::cout << "  " << join(order, ",") << "\n";
  std::cout << "max entrywise deviation " << dev << "\n";
  return 0;
}

int cmd_sample(const Options &o) {
  const Scenario s = build_scenario(o);
  const auto res = psv::engine::sample(s, order_of(o, s), o.samples, o.seed, o.threads);
  if (o.json) {
    emit(o, psv::serialize::to_json(res));
    return 0;
  }
  std::cout << join(res.detectors, " ") << "  count  frequency\n";
  for (const auto &[t, n] : res.counts) {
    std::cout << join(t, " ") << "  " << n << "  " << fmt(res.frequency(t)) << "\n";
  }
  return 0;
}

int cmd_compare_hk(const Options &o) {
  auto cfg = singlet_config(o);
  const auto cmp = psv::hellwig_kraus::hk_copy_inconsistency(cfg);
  emit(o, psv::serialize::to_json(cmp));
  return 0;
}

int cmd_diagram(const Options &o) {
  const Scenario s = build_scenario(o);
  const auto rec = do_run(o, s);
  const std::string doc =
      o.ascii ? psv::diagram::render_ascii(s, rec) : psv::diagram::render_svg(s, rec);
  if (o.out.empty()) std::cout << doc;
  else psv::diagram::write_file(o.out, doc);
  return 0;
}

int cmd_scenario(const Options &o) {
  emit(o, psv::serialize::to_json(build_scenario(o)));
  return 0;
}

int exit_code_for(const psv::Error &e) {
  if (dynamic_cast<const psv::ImpossibleBranchError *>(&e)) return 2;
  if (dynamic_cast<const psv::IoError *>(&e)) return 3;
  return 1;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Relativistic state-vector reduction simulator"};
  app.require_subcommand(0, 1);
  Options o;
  bool compare_flag = false;

  const auto common = [&](CLI::App *sub) {
    sub->add_option("--scenario", o.scenario, "split | singlet | singlet-copies | ghz | FILE.json");
    sub->add_option("--order", o.order, "Reduction order, e.g. C,B,A");
    sub->add_option("--axes", o.axes,
                    "Axes as i=..,j=..,k=.. (x|y|z|-x|.. or theta,phi); GHZ also takes C=..");
    sub->add_option("--outcomes", o.outcomes, "Fixed outcomes, e.g. A=+,B=-");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_flag("--json", o.json, "Machine-readable output");
    sub->add_flag("--copies", o.copies, "Singlet with copy devices and detector C");
    sub->add_option("--out", o.out, "Write output to PATH");
    sub->add_option("--d", o.dim, "Spatial dimension for built-in scenarios");
    sub->add_option("--c", o.c, "Speed of light for built-in scenarios");
    sub->add_option("--kernels", o.kernels, "auto | scalar | avx2");
  };

  std::map<std::string, int (*)(const Options &)> handlers{
      {"run", cmd_run},       {"dist", cmd_dist},           {"orders", cmd_orders},
      {"sample", cmd_sample}, {"compare-hk", cmd_compare_hk}, {"diagram", cmd_diagram},
      {"scenario", cmd_scenario}};
  std::map<std::string, CLI::App *> subs;
  subs["run"] = app.add_subcommand("run", "One run with fixed or sampled outcomes");
  subs["dist"] = app.add_subcommand("dist", "Exact joint outcome distribution");
  subs["orders"] = app.add_subcommand("orders", "Valid reduction orders and their agreement");
  subs["sample"] = app.add_subcommand("sample", "Monte Carlo sampling");
  subs["compare-hk"] = app.add_subcommand("compare-hk", "Region prescription vs. engine");
  subs["diagram"] = app.add_subcommand("diagram", "Spacetime diagram of a run (SVG)");
  subs["scenario"] = app.add_subcommand("scenario", "Print a scenario as JSON");
  for (auto &[name, sub] : subs) common(sub);
  subs["sample"]->add_option("--samples", o.samples, "Number of runs");
  subs["sample"]->add_option("--threads", o.threads, "Worker threads");
  subs["diagram"]->add_flag("--ascii", o.ascii, "Character-grid output");
  app.add_flag("--compare-hk", compare_flag, "Same as the compare-hk subcommand");
  app.add_option("--axes", o.axes, "Axes for --compare-hk");
  app.add_flag("--json", o.json, "Machine-readable errors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (!psv::kernels::select(psv::kernels::parse_backend(o.kernels))) {
      throw ConfigError("kernel backend '" + o.kernels + "' is not available on this CPU");
    }
    if (compare_flag) return cmd_compare_hk(o);
    for (auto &[name, sub] : subs) {
      if (sub->parsed()) return handlers.at(name)(o);
    }
    std::cout << app.help();
    return 0;
  } catch (const psv::Error &e) {
    if (o.json) {
      std::cerr << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    } else {
      std::cerr << "psv: " << e.what() << "\n";
    }
    return exit_code_for(e);
  }
}
