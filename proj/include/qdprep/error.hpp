// Copyright 2026 The qdprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdprep {

enum class ErrorKind {
  InvalidArgument,
  BelowThreshold,
  NoRoot,
  PoleProximity,
  NonUnitary,
  StepTooLarge,
  TraceDrift,
  NegativePopulation,
  NoFeasibleT,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base class for every error raised by the library. The kind decides how
/// the CLI maps the failure onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures of the numerics (drift, step size, non-convergence)
  /// rather than of the requested physics.
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::StepTooLarge || kind_ == ErrorKind::TraceDrift ||
           kind_ == ErrorKind::NegativePopulation ||
           kind_ == ErrorKind::NonUnitary;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace qdprep
