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

// Pulse designers for complete biexciton preparation: the minimum constant
// pulse, the hyperbolic-secant pulse with closed-form final amplitude, and
// the minimum-time on-off-on sequence.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qdprep/model.hpp"

namespace qdprep {

struct ConstantDesign {
  double total_T = 0.0;
  double omega0 = 0.0;
  int k = 2;  ///< omega * T = k * pi

  PulseSequence sequence() const { return PulseSequence({{omega0, total_T}}); }
};

/// Constant pulse with omega T = k pi at T = pi/omega_b. k must be even;
/// k = 2 gives the smallest amplitude sqrt(6) omega_b.
ConstantDesign design_constant(const SystemParams& params, int k = 2);

/// Final bright amplitude A(t -> inf) for Omega0 sech(t/t_p) with
/// Omega0 t_p = sqrt(2) n, as a function of x = omega_b t_p.
std::complex<double> sech_final_amplitude(int n, double x);

/// Sum_j 2 atan(x / (j + 1/2)), the phase of the product in
/// sech_final_amplitude; increases monotonically from 0 to n pi.
double sech_phase_sum(int n, double x);

struct SechDesign {
  int n = 2;
  double t_p = 0.0;
  double omega0 = 0.0;
  double truncation_halfwidth = 0.0;  ///< simulate on [-t0, t0]
  double x = 0.0;                     ///< omega_b * t_p
  double bracket_max = 0.0;           ///< upper end of the x bracket searched
};

/// Narrowest sech pulse of order n that drives A to -1/sqrt(2).
/// Throws NoRoot when the order admits no finite width (n = 1).
SechDesign design_sech(const SystemParams& params, int n, double truncation_factor = 20.0);

/// |tan[w (pi/(2 omega_b) - tau2)] + n_z tan(omega_b tau2)|^2.
/// Throws InvalidArgument outside 0 <= tau2 < pi/(2 omega_b) and
/// PoleProximity within 1e-6 of a tangent pole.
double transcendental_residual(const SystemParams& params, double tau2);

enum class SignVariant { Upper, Lower };

std::string_view to_string(SignVariant v) noexcept;

struct OnOffOnDesign {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;
  double total_T = 0.0;
  SignVariant sign_variant = SignVariant::Lower;
  std::vector<double> all_roots;  ///< every tau2 root found, ascending
  double residual = 0.0;          ///< phase-condition residual of the closed-form propagator

  PulseSequence sequence(const SystemParams& params) const;
};

struct OnOffOnSolution {
  OnOffOnDesign lower;  ///< longer tau1
  OnOffOnDesign upper;  ///< shorter tau1

  const OnOffOnDesign& variant(SignVariant v) const noexcept {
    return v == SignVariant::Lower ? lower : upper;
  }
};

struct RootSearchOptions {
  std::size_t grid_points = 10000;
  double interval_tolerance = 1e-12;
};

/// Every root of the transcendental equation for tau2 in [0, pi/(2 omega_b)),
/// found by bisecting sign changes on a grid split at the tangent poles.
std::vector<double> transcendental_roots(const SystemParams& params,
                                         const RootSearchOptions& opts = {});

/// Minimum-time on-off-on sequence: largest feasible tau2 root, both sign
/// variants. Throws BelowThreshold when omega_max <= sqrt(6) omega_b and
/// NoRoot if no feasible root exists.
OnOffOnSolution design_on_off_on(const SystemParams& params, const RootSearchOptions& opts = {});

struct CurvePoint {
  double omega0 = 0.0;
  double total_T = 0.0;
};

/// Minimum on-off-on duration for each amplitude.
std::vector<CurvePoint> min_time_curve(double omega_b, std::span<const double> omega0s);

/// sqrt(6) omega_b: below it no on-off-on sequence beats pi/omega_b.
inline double onoffon_threshold(double omega_b) noexcept { return std::sqrt(6.0) * omega_b; }

}  // namespace qdprep
