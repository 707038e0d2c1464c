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

#include "qdprep/design.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "qdprep/error.hpp"
#include "qdprep/kernels/kernels.hpp"
#include "qdprep/propagators.hpp"

namespace qdprep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleGuard = 1e-6;

// Distance of an angle from the nearest pi/2 + k pi.
double pole_distance(double angle) {
  const double shifted = angle - 0.5 * kPi;
  return std::abs(shifted - kPi * std::nearbyint(shifted / kPi));
}

template <typename F>
double bisect(F&& f, double lo, double hi, double f_lo, double tol) {
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(SignVariant v) noexcept {
  return v == SignVariant::Upper ? "upper" : "lower";
}

ConstantDesign design_constant(const SystemParams& params, int k) {
  if (k < 2 || k % 2 != 0) {
    raise(ErrorKind::InvalidArgument,
          fmt::format("constant pulse order k must be even and >= 2, got {}", k));
  }
  const double wb = params.omega_b();
  ConstantDesign d;
  d.k = k;
  d.total_T = kPi / wb;
  // omega T = k pi  =>  omega = k omega_b  =>  Omega0^2 = 2 (k^2 - 1) omega_b^2
  d.omega0 = wb * std::sqrt(2.0 * (k * k - 1.0));
  return d;
}

double sech_phase_sum(int n, double x) {
  double phase = 0.0;
  for (int j = 0; j < n; ++j) phase += 2.0 * std::atan(x / (j + 0.5));
  return phase;
}

std::complex<double> sech_final_amplitude(int n, double x) {
  if (n < 1) raise(ErrorKind::InvalidArgument, fmt::format("sech order must be >= 1, got {}", n));
  std::complex<double> product{1.0};
  for (int j = 0; j < n; ++j) {
    product *= std::complex<double>(j + 0.5, x) / std::complex<double>(j + 0.5, -x);
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * kInvSqrt2 * product;
}

SechDesign design_sech(const SystemParams& params, int n, double truncation_factor) {
  if (n < 1) raise(ErrorKind::InvalidArgument, fmt::format("sech order must be >= 1, got {}", n));
  if (!(truncation_factor > 0.0)) {
    raise(ErrorKind::InvalidArgument, "truncation factor must be positive");
  }
  // A(1) = -1/sqrt2 needs (-1)^n exp(i phase) = -1, i.e. phase = (n+1) pi mod 2 pi.
  // The phase rises monotonically from 0 towards n pi, so the first
  // crossing is at pi (n even) or 2 pi (n odd).
  const double target = (n % 2 == 0) ? kPi : 2.0 * kPi;
  constexpr double kBracketLimit = 1e6;
  if (static_cast<double>(n) * kPi <= target) {
    raise(ErrorKind::NoRoot,
          fmt::format("sech order n={} reaches phase {:.6f} only asymptotically; no finite width "
                      "in bracket (0, {:g}]",
                      n, static_cast<double>(n) * kPi, kBracketLimit));
  }
  auto f = [&](double x) { return sech_phase_sum(n, x) - target; };
  double hi = 1.0;
  while (f(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > kBracketLimit) {
      raise(ErrorKind::NoRoot,
            fmt::format("no sech width for n={} in bracket (0, {:g}]", n, kBracketLimit));
    }
  }
  const double x = bisect(f, 0.0, hi, f(0.0), 0.0);

  SechDesign d;
  d.n = n;
  d.x = x;
  d.bracket_max = hi;
  d.t_p = x / params.omega_b();
  d.omega0 = std::numbers::sqrt2 * n / d.t_p;
  d.truncation_halfwidth = truncation_factor * d.t_p;
  return d;
}

double transcendental_residual(const SystemParams& params, double tau2) {
  const double wb = params.omega_b();
  const double window = 0.5 * kPi / wb;
  if (!(tau2 >= 0.0 && tau2 < window)) {
    raise(ErrorKind::InvalidArgument,
          fmt::format("tau2 = {} outside the window [0, {})", tau2, window));
  }
  const double lhs_arg = params.omega() * (window - tau2);
  const double rhs_arg = wb * tau2;
  if (pole_distance(lhs_arg) < kPoleGuard || pole_distance(rhs_arg) < kPoleGuard) {
    raise(ErrorKind::PoleProximity, fmt::format("tau2 = {} sits on a tangent pole", tau2));
  }
  const double e = std::tan(lhs_arg) + params.n_z() * std::tan(rhs_arg);
  return e * e;
}

std::vector<double> transcendental_roots(const SystemParams& params,
                                         const RootSearchOptions& opts) {
  if (opts.grid_points < 2) raise(ErrorKind::InvalidArgument, "root grid needs >= 2 points");
  const double wb = params.omega_b();
  const double w = params.omega();
  const double nz = params.n_z();
  const double window = 0.5 * kPi / wb;

  auto f = [&](double t) { return std::tan(w * (window - t)) + nz * std::tan(wb * t); };

  // Poles of the left tangent inside the window; the right tangent's only
  // pole is the window end.
  std::vector<double> poles;
  for (int k = 0;; ++k) {
    const double p = window - (0.5 + k) * kPi / w;
    if (p <= 0.0) break;
    poles.push_back(p);
  }
  std::sort(poles.begin(), poles.end());

  const std::size_t n = opts.grid_points;
  const double h = window / static_cast<double>(n);
  std::vector<double> grid(n), values(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = h * static_cast<double>(i);
  kernels::tangent_residual(kernels::active(), wb, w, nz, grid, values);

  std::vector<double> roots;
  auto scan_piece = [&](double lo, double f_lo, double hi, double f_hi) {
    if (f_lo == 0.0) {
      roots.push_back(lo);
    } else if (std::signbit(f_lo) != std::signbit(f_hi) && f_hi != 0.0) {
      roots.push_back(bisect(f, lo, hi, f_lo, opts.interval_tolerance));
    }
  };

  auto pole_it = poles.begin();
  const double guard = 1e-9 * window;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = grid[i];
    const double hi = (i + 1 < n) ? grid[i + 1] : window - guard;
    const double f_hi = (i + 1 < n) ? values[i + 1] : f(hi);
    while (pole_it != poles.end() && *pole_it < lo) ++pole_it;
    if (pole_it != poles.end() && *pole_it <= hi) {
      // Split the cell at the pole; a sign flip across it is not a root.
      const double p = *pole_it;
      if (p - guard > lo) scan_piece(lo, values[i], p - guard, f(p - guard));
      if (p + guard < hi) scan_piece(p + guard, f(p + guard), hi, f_hi);
    } else {
      scan_piece(lo, values[i], hi, f_hi);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](double a, double b) {
                            return std::abs(a - b) <= 2.0 * opts.interval_tolerance;
                          }),
              roots.end());
  return roots;
}

PulseSequence OnOffOnDesign::sequence(const SystemParams& params) const {
  return PulseSequence({{params.omega_max(), tau1}, {0.0, tau2}, {params.omega_max(), tau3}});
}

OnOffOnSolution design_on_off_on(const SystemParams& params, const RootSearchOptions& opts) {
  const double wb = params.omega_b();
  if (params.omega_max() <= onoffon_threshold(wb)) {
    raise(ErrorKind::BelowThreshold,
          fmt::format("omega0 = {} <= sqrt(6) omega_b = {}: an on-off-on sequence cannot prepare "
                      "the biexciton faster than pi/omega_b",
                      params.omega_max(), onoffon_threshold(wb)));
  }
  const std::vector<double> roots = transcendental_roots(params, opts);
  const double w = params.omega();
  const double long_base = 0.5 * kPi * (1.0 / wb + 1.0 / w);
  const double short_base = 0.5 * kPi * (1.0 / wb - 1.0 / w);

  // Both variants share min(tau1, tau3) = short_base - tau2.
  auto feasible = std::find_if(roots.rbegin(), roots.rend(),
                               [&](double t2) { return t2 > 0.0 && short_base - t2 >= 0.0; });
  if (feasible == roots.rend()) {
    raise(ErrorKind::NoRoot,
          fmt::format("no feasible tau2 root for omega0 = {} ({} roots found)",
                      params.omega_max(), roots.size()));
  }
  const double tau2 = *feasible;

  auto make = [&](SignVariant v) {
    OnOffOnDesign d;
    d.sign_variant = v;
    d.tau2 = tau2;
    d.tau1 = (v == SignVariant::Lower ? long_base : short_base) - tau2;
    d.tau3 = (v == SignVariant::Lower ? short_base : long_base) - tau2;
    d.total_T = d.tau1 + d.tau2 + d.tau3;
    d.all_roots = roots;
    d.residual =
        phase_condition_residual(onoffon_coefficients(params, d.tau1, d.tau2, d.tau3), d.total_T,
                                 params);
    return d;
  };
  return {make(SignVariant::Lower), make(SignVariant::Upper)};
}

std::vector<CurvePoint> min_time_curve(double omega_b, std::span<const double> omega0s) {
  std::vector<CurvePoint> out;
  out.reserve(omega0s.size());
  for (double a : omega0s) {
    const auto sol = design_on_off_on(SystemParams(omega_b, a));
    out.push_back({a, sol.lower.total_T});
  }
  return out;
}

}  // namespace qdprep
