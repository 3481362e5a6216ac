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

#include <stdexcept>
#include <string>

namespace psv {

// Base of every error raised by the library. The CLI maps the subclasses
// onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char *kind() const noexcept { return "error"; }
};

// Malformed input: dimension mismatch, non-unitary matrix, bad labels,
// invalid scenario geometry.
class ConfigError : public Error {
 public:
  using Error::Error;
  const char *kind() const noexcept override { return "config"; }
};

// A detector or reduction order that would act on an already-reduced
// region, or an order that contradicts the timelike partial order.
class OrderingError : public ConfigError {
 public:
  using ConfigError::ConfigError;
  const char *kind() const noexcept override { return "ordering"; }
};

// A requested outcome has (numerically) zero probability.
class ImpossibleBranchError : public Error {
 public:
  using Error::Error;
  const char *kind() const noexcept override { return "impossible_branch"; }
};

class IoError : public Error {
 public:
  using Error::Error;
  const char *kind() const noexcept override { return "io"; }
};

}  // namespace psv
