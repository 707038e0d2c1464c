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

// Three-level biexciton cascade in the frame rotating at the laser frequency,
// tuned to two-photon resonance. All quantities are in natural units where
// time is measured in 1/omega_b; physical units only appear in the CLI.

#include <array>
#include <complex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "qdprep/su2.hpp"

namespace qdprep {

/// Biexciton shift omega_b = E_b / (4 hbar) and the Rabi amplitude bound.
class SystemParams {
 public:
  SystemParams() = default;
  /// Throws InvalidArgument unless omega_b > 0 and omega_max >= 0.
  SystemParams(double omega_b, double omega_max);

  double omega_b() const noexcept { return omega_b_; }
  double omega_max() const noexcept { return omega_max_; }

  /// Dressed frequency sqrt(omega_b^2 + omega_max^2 / 2) of the "on" segment.
  double omega() const noexcept { return omega_at(omega_max_); }
  double n_x() const noexcept { return n_x_at(omega_max_); }
  double n_z() const noexcept { return n_z_at(omega_max_); }

  // Same quantities for an arbitrary constant amplitude.
  double omega_at(double amplitude) const noexcept;
  double n_x_at(double amplitude) const noexcept;
  double n_z_at(double amplitude) const noexcept;

  SystemParams with_omega_max(double omega_max) const { return {omega_b_, omega_max}; }

 private:
  double omega_b_ = 1.0;
  double omega_max_ = 0.0;
};

struct PulseSegment {
  double amplitude = 0.0;
  double duration = 0.0;
};

/// Piecewise-constant control; segment k covers [t_k, t_k + duration_k).
class PulseSequence {
 public:
  PulseSequence() = default;
  explicit PulseSequence(std::vector<PulseSegment> segments);

  std::span<const PulseSegment> segments() const noexcept { return segments_; }
  bool empty() const noexcept { return segments_.empty(); }
  double total_duration() const noexcept;

  /// Amplitude at time t; zero outside [0, total_duration).
  double amplitude_at(double t) const noexcept;

  /// Throws InvalidArgument if any amplitude lies outside [0, omega_max].
  void validate(const SystemParams& params) const;

 private:
  std::vector<PulseSegment> segments_;
};

struct ThreeLevelState {
  cplx c0{1.0};
  cplx c1{};
  cplx c2{};

  static ThreeLevelState ground() noexcept { return {}; }
  double norm_squared() const noexcept {
    return std::norm(c0) + std::norm(c1) + std::norm(c2);
  }
  /// The conserved combination (c2 - c0)/sqrt(2).
  cplx dark_amplitude() const noexcept { return (c2 - c0) * kInvSqrt2; }
};

/// Bright-state amplitudes; the ground state maps to (1/sqrt(2), 0), so the
/// norm of a physical state is 1/2 rather than 1.
struct TwoLevelState {
  cplx a{kInvSqrt2};
  cplx b{};

  double norm_squared() const noexcept { return std::norm(a) + std::norm(b); }
};

using Matrix3 = std::array<std::array<cplx, 3>, 3>;

/// H/hbar for real Rabi frequency at two-photon resonance.
Matrix3 three_level_hamiltonian(const SystemParams& params, double rabi);

/// A = (c2+c0)/sqrt2, B = c1, C = (c2-c0)/sqrt2.
std::pair<TwoLevelState, cplx> reduce_to_two_level(const ThreeLevelState& state) noexcept;
ThreeLevelState lift_from_two_level(const TwoLevelState& two, cplx dark) noexcept;

/// |exp(i omega_b T) U00 + 1|^2 + |U01|^2, which vanishes exactly when the
/// two-level evolution returns the bright state with a pi phase.
/// Throws NonUnitary if U deviates from unitarity by more than 1e-9.
double phase_condition_residual(const Su2Propagator& u, double total_time,
                                const SystemParams& params);

/// |c2|^2.
inline double biexciton_fidelity(const ThreeLevelState& s) noexcept { return std::norm(s.c2); }

}  // namespace qdprep
