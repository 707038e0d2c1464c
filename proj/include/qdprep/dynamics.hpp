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

// Fixed-step RK4 propagation of the three-level amplitudes, the bright
// two-level amplitudes and the damped density-matrix envelopes.
//
// Integration intervals are split at every switching instant of the control
// so no RK4 step straddles a discontinuity.

#include <iosfwd>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "qdprep/model.hpp"

namespace qdprep {

struct ConstantEnvelope {
  double omega0 = 0.0;
};

/// omega0 sech((t - t_center) / t_p)
struct SechEnvelope {
  double omega0 = 0.0;
  double t_p = 1.0;
  double t_center = 0.0;
};

/// Pulse sequence starting at t_start; zero before and after.
struct PiecewiseEnvelope {
  PulseSequence sequence;
  double t_start = 0.0;
};

/// Zero-order hold through (t, omega) samples sorted by t; zero before the
/// first sample and after the last.
struct SampledEnvelope {
  std::vector<std::pair<double, double>> samples;
};

class ControlEnvelope {
 public:
  using Kind = std::variant<ConstantEnvelope, SechEnvelope, PiecewiseEnvelope, SampledEnvelope>;

  ControlEnvelope(Kind kind);  // NOLINT(google-explicit-constructor)
  template <typename E>
    requires(!std::is_same_v<std::remove_cvref_t<E>, ControlEnvelope> &&
             !std::is_same_v<std::remove_cvref_t<E>, Kind> &&
             std::is_constructible_v<Kind, E &&>)
  ControlEnvelope(E&& e)  // NOLINT(google-explicit-constructor)
      : ControlEnvelope(Kind(std::forward<E>(e))) {}

  double evaluate(double t) const;
  /// Instants inside (t0, t1) where the envelope may jump.
  std::vector<double> switch_times(double t0, double t1) const;
  /// True when the envelope is constant between consecutive switch times.
  bool is_piecewise_constant() const noexcept;
  /// Shortest non-zero segment, if the envelope is a pulse sequence.
  std::optional<double> shortest_segment() const;

  const Kind& kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct TimeSpan {
  double start = 0.0;
  double end = 0.0;
};

/// Dissipation (Gamma) and dephasing (gamma) rates, in units of omega_b.
struct RateParams {
  double Gamma11 = 0.0;
  double Gamma22 = 0.0;
  double gamma01 = 0.0;
  double gamma02 = 0.0;
  double gamma12 = 0.0;

  static RateParams uniform(double dissipation, double dephasing) {
    return {dissipation, dissipation, dephasing, dephasing, dephasing};
  }
  RateParams scaled(double factor) const {
    return {Gamma11 * factor, Gamma22 * factor, gamma01 * factor, gamma02 * factor,
            gamma12 * factor};
  }
  void validate() const;
};

struct DensityState {
  double s00 = 1.0;
  double s11 = 0.0;
  double s22 = 0.0;
  cplx s01{};
  cplx s02{};
  cplx s12{};

  static DensityState from_pure(const ThreeLevelState& psi) noexcept;
  double trace() const noexcept { return s00 + s11 + s22; }
};

template <typename State>
struct TrajectoryPoint {
  double t = 0.0;
  State state;
};

template <typename State>
using Trajectory = std::vector<TrajectoryPoint<State>>;

/// min(1e-3/omega_b, shortest_segment/50).
double default_step(const SystemParams& params, const ControlEnvelope& env);

/// i dc/dt = H(t) c. Throws StepTooLarge when the norm drifts by more than 1e-6.
Trajectory<ThreeLevelState> propagate_three_level(const SystemParams& params,
                                                  const ControlEnvelope& env, TimeSpan span,
                                                  const ThreeLevelState& initial, double dt);

/// Bright two-level system including the -2 omega_b detuning of level 1.
Trajectory<TwoLevelState> propagate_two_level(const SystemParams& params,
                                              const ControlEnvelope& env, TimeSpan span,
                                              const TwoLevelState& initial, double dt);

/// Damped envelopes; sigma_11 is closed by trace conservation, so decay out
/// of level 2 feeds level 1 and decay out of level 1 feeds level 0.
/// Throws TraceDrift (|tr - 1| > 1e-6) or NegativePopulation (< -1e-6).
Trajectory<DensityState> propagate_density(const SystemParams& params, const RateParams& rates,
                                           const ControlEnvelope& env, TimeSpan span,
                                           const DensityState& initial, double dt);

struct CsvOptions {
  std::string metadata;     ///< written after "# " on the first line
  double time_scale = 1.0;  ///< multiplies t on output
};

void write_csv(std::ostream& os, const Trajectory<ThreeLevelState>& traj,
               const CsvOptions& opts = {});
void write_csv(std::ostream& os, const Trajectory<DensityState>& traj,
               const CsvOptions& opts = {});

}  // namespace qdprep
