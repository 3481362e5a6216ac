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

// Spacetime diagrams of a run in 1+1 dimensions: time runs up, space runs
// right. Output is deterministic so that rendered files can be diffed.

#include <string>

#include "psv/engine.hpp"

namespace psv::diagram {

/// SVG 1.1 document. Element classes: "worldline", "cone", "surface",
/// "past-shade", "surface-label", "detector", "interaction",
/// "initial-surface". Throws ConfigError for d != 1.
std::string render_svg(const engine::Scenario &s, const engine::RunRecord &record);

/// Coarse character grid: digits mark reduction surfaces, capital letters
/// detectors, '*' interactions, '.' worldlines, '=' a flat initial surface.
std::string render_ascii(const engine::Scenario &s, const engine::RunRecord &record,
                         std::size_t cols = 72, std::size_t rows = 24);

/// Throws IoError on failure.
void write_file(const std::string &path, const std::string &content);

}  // namespace psv::diagram
