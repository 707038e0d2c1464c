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

#include "qdprep/error.hpp"

#include <fmt/format.h>

namespace qdprep {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BelowThreshold: return "BelowThreshold";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::TraceDrift: return "TraceDrift";
    case ErrorKind::NegativePopulation: return "NegativePopulation";
    case ErrorKind::NoFeasibleT: return "NoFeasibleT";
  }
  return "Unknown";
}

void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, fmt::format("{}: {}", to_string(kind), what));
}

}  // namespace qdprep
