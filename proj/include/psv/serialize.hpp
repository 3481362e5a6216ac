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

// JSON schema for scenarios, run records, distributions and comparator
// output. Writers always emit the explicit form (matrices, projectors,
// pointers) so that reading back reproduces the same objects.

#include <string>

#include "json.hpp"
#include "psv/engine.hpp"
#include "psv/hellwig_kraus.hpp"

namespace psv::serialize {

using json = nlohmann::json;

json to_json(const geometry::Event &e);
geometry::Event event_from_json(const json &j);

json to_json(const geometry::Lcsh &s);
geometry::Lcsh lcsh_from_json(const json &j);

json to_json(const hilbert::Axis &a);
/// {"theta":..,"phi":..}, {"xyz":[..]} or a shorthand string ("x", "-z").
hilbert::Axis axis_from_json(const json &j);

json to_json(const hilbert::Matrix &m);
hilbert::Matrix matrix_from_json(const json &j);

json to_json(const hilbert::StateVector &psi);
hilbert::StateVector state_from_json(const json &j);

json to_json(const engine::Scenario &s);
/// Validates the result; malformed input raises ConfigError.
engine::Scenario scenario_from_json(const json &j);

json to_json(const engine::RunRecord &r);
engine::RunRecord record_from_json(const json &j);

json to_json(const engine::JointDistribution &d);
engine::JointDistribution distribution_from_json(const json &j);

json to_json(const engine::SampleResult &r);

json to_json(const hellwig_kraus::HkComparison &c);

/// Reads and parses a scenario file; IoError if unreadable.
engine::Scenario load_scenario(const std::string &path);

}  // namespace psv::serialize
