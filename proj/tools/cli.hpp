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

#include <iosfwd>
#include <string>

namespace qdprep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNumerical = 3;

/// Conversion between a CLI unit system and the library's natural units.
///
/// In natural mode omega_b is the frequency unit itself and values pass
/// through unchanged. In ps mode omega_b is given in ps^-1; frequencies are
/// read in ps^-1, times in ps and decay rates in ns^-1.
struct UnitSystem {
  bool ps = false;
  double omega_b = 1.0;

  double lib_omega_b() const { return ps ? 1.0 : omega_b; }
  double freq_in(double x) const { return ps ? x / omega_b : x; }
  double freq_out(double x) const { return ps ? x * omega_b : x; }
  double time_in(double t) const { return ps ? t * omega_b : t; }
  double time_out(double t) const { return ps ? t / omega_b : t; }
  double rate_in(double r) const { return ps ? r * 1e-3 / omega_b : r; }
  std::string name() const { return ps ? "ps" : "natural"; }
  std::string time_unit() const { return ps ? "ps" : "1/omega_b"; }
  std::string freq_unit() const { return ps ? "ps^-1" : "omega_b"; }
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdprep::cli
