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

// Acceptance gate: one PASS/FAIL line per criterion.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qdprep/design.hpp"
#include "qdprep/dynamics.hpp"
#include "qdprep/error.hpp"
#include "qdprep/optcontrol.hpp"
#include "qdprep/propagators.hpp"

using namespace qdprep;
using std::numbers::pi;

namespace {

const double kSechAmp = 4.0 * std::sqrt(2.0 / 3.0);

// T(50 omega_b) from a 30-digit root solve.
constexpr double kGoldenT50 = 1.649936097129446;

struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double simulate_fidelity(const SystemParams& p, const ControlEnvelope& env, TimeSpan span,
                         double dt) {
  return biexciton_fidelity(propagate_three_level(p, env, span, {}, dt).back().state);
}

void constant_pulse(Check& c) {
  const auto d = design_constant(SystemParams(1.0, 0.0));
  c.require(std::abs(d.total_T - pi) < 1e-12, fmt::format("T = {}", d.total_T));
  c.require(std::abs(d.omega0 - std::sqrt(6.0)) < 1e-12, fmt::format("Omega0 = {}", d.omega0));
  const double f =
      simulate_fidelity(SystemParams(1.0, d.omega0), ConstantEnvelope{d.omega0}, {0.0, d.total_T},
                        1e-3);
  c.require(f >= 1.0 - 1e-6, fmt::format("fidelity {}", f));
  c.note(fmt::format("T={:.12f} Omega0={:.12f} F={:.10f}", d.total_T, d.omega0, f));
}

void sech_pulse(Check& c) {
  const auto d = design_sech(SystemParams(1.0, 0.0), 2);
  c.require(std::abs(d.t_p - std::sqrt(3.0) / 2.0) <= 1e-9, fmt::format("t_p = {}", d.t_p));
  c.require(std::abs(d.omega0 - kSechAmp) <= 1e-8, fmt::format("Omega0 = {}", d.omega0));
  const double t0 = d.truncation_halfwidth;
  const double f = simulate_fidelity(SystemParams(1.0, d.omega0),
                                     SechEnvelope{d.omega0, d.t_p, 0.0}, {-t0, t0}, 1e-3);
  c.require(std::abs(t0 - 20.0 * d.t_p) < 1e-12, "window is not 20 t_p");
  c.require(f >= 1.0 - 1e-4, fmt::format("fidelity {}", f));
  c.note(fmt::format("t_p={:.12f} Omega0={:.12f} F={:.10f}", d.t_p, d.omega0, f));
}

void onoffon_low(Check& c) {
  const SystemParams p(1.0, kSechAmp);
  const auto sol = design_on_off_on(p);
  c.require(std::abs(sol.lower.tau2 - 0.3861) <= 1e-3, fmt::format("tau2 = {}", sol.lower.tau2));
  c.require(std::abs(sol.lower.total_T - 2.7555) <= 1e-3,
            fmt::format("T = {}", sol.lower.total_T));
  for (SignVariant v : {SignVariant::Lower, SignVariant::Upper}) {
    const auto& d = sol.variant(v);
    const ControlEnvelope env = PiecewiseEnvelope{d.sequence(p), 0.0};
    const double f = simulate_fidelity(p, env, {0.0, d.total_T}, default_step(p, env));
    c.require(f >= 1.0 - 1e-6, fmt::format("{} variant fidelity {}", to_string(v), f));
    c.require(d.residual < 1e-10, fmt::format("{} residual {}", to_string(v), d.residual));
    c.note(fmt::format("{}: tau=({:.6f},{:.6f},{:.6f}) F={:.10f} res={:.1e}", to_string(v),
                       d.tau1, d.tau2, d.tau3, f, d.residual));
  }
}

void onoffon_high(Check& c) {
  const auto d = design_on_off_on(SystemParams(1.0, 10.0)).lower;
  c.require(d.all_roots.size() > 1, fmt::format("{} roots", d.all_roots.size()));
  c.require(!d.all_roots.empty() && d.tau2 == d.all_roots.back(), "largest root not picked");
  c.require(std::abs(d.tau2 - 1.1763) <= 1e-3, fmt::format("tau2 = {}", d.tau2));
  c.require(std::abs(d.total_T - 1.9653) <= 1e-3, fmt::format("T = {}", d.total_T));
  c.note(fmt::format("roots={} tau2={:.6f} T={:.6f}", d.all_roots.size(), d.tau2, d.total_T));
}

void threshold(Check& c) {
  bool below = false;
  try {
    design_on_off_on(SystemParams(1.0, 2.4));
  } catch (const Error& e) {
    below = e.kind() == ErrorKind::BelowThreshold;
  }
  c.require(below, "Omega0 = 2.4 did not raise BelowThreshold");
  const auto d = design_on_off_on(SystemParams(1.0, std::sqrt(6.0) + 1e-6)).lower;
  c.require(std::abs(d.total_T - pi) < 1e-2, fmt::format("T = {}", d.total_T));
  c.note(fmt::format("T(sqrt6+1e-6)={:.6f}", d.total_T));
}

void asymptote(Check& c) {
  const std::vector<double> amps{3.0, 5.0, 10.0, 20.0, 50.0};
  const auto curve = min_time_curve(1.0, amps);
  std::string list;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (i > 0) {
      c.require(curve[i].total_T <= curve[i - 1].total_T,
                fmt::format("T increases at Omega0 = {}", curve[i].omega0));
    }
    list += fmt::format(" {:.6f}", curve[i].total_T);
  }
  const double t50 = curve.back().total_T;
  c.require(t50 > pi / 2.0 && t50 - pi / 2.0 < 0.2, fmt::format("T(50) = {}", t50));
  c.require(std::abs(t50 - kGoldenT50) < 1e-10, fmt::format("T(50) = {:.15f} vs golden", t50));
  c.note("T =" + list);
}

void coincidence(Check& c, double dT, int restarts, double tol, double budget) {
  ScanOptions scan;
  scan.dT = dT;
  scan.optimizer.restarts = restarts;
  CoincidenceOptions opts;
  opts.scan = scan;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> amps{kSechAmp, 10.0};
  const auto report = coincidence_report(1.0, amps, opts);
  const double elapsed = seconds_since(t0);
  for (const auto& row : report.rows) {
    c.require(row.T_numeric.has_value(), fmt::format("no T_min at Omega0 = {}", row.omega0));
    c.require(row.gap() <= tol + 1e-12,
              fmt::format("gap {:.4f} at Omega0 = {:.4f}", row.gap(), row.omega0));
    c.note(fmt::format("Omega0={:.4f} T_analytic={:.4f} T_min={} gap={:.4f}", row.omega0,
                       row.T_analytic,
                       row.T_numeric ? fmt::format("{:.2f}", *row.T_numeric) : "none", row.gap()));
  }
  if (budget > 0.0) {
    c.require(elapsed < budget, fmt::format("took {:.1f} s (limit {:.0f} s)", elapsed, budget));
  }
}

void scan_full(Check& c) { coincidence(c, 0.01, 8, 0.02, 0.0); }
void scan_quick(Check& c) { coincidence(c, 0.05, 2, 0.05, 60.0); }

void dissipative(Check& c) {
  struct Case {
    double omega0_rel, omega_b_ps, expected;
  };
  const Case cases[] = {{kSechAmp, 5.0, 0.9981},
                        {kSechAmp, 0.5, 0.9812},
                        {10.0, 5.0, 0.9985},
                        {10.0, 0.5, 0.9856}};
  for (const auto& k : cases) {
    // Gamma = 1 ns^-1, gamma = 7 ns^-1 expressed in units of omega_b.
    const auto rates = RateParams::uniform(1e-3 / k.omega_b_ps, 7e-3 / k.omega_b_ps);
    const SystemParams p(1.0, k.omega0_rel);
    const auto d = design_on_off_on(p).lower;
    const auto traj = propagate_density(p, rates, PiecewiseEnvelope{d.sequence(p), 0.0},
                                        {0.0, d.total_T}, DensityState{}, 1e-3);
    const double s22 = traj.back().state.s22;
    c.require(std::abs(s22 - k.expected) <= 2e-3,
              fmt::format("sigma22 = {} vs {}", s22, k.expected));
    c.note(fmt::format("Omega0={:.4f} omega_b={}ps^-1 sigma22={:.6f} (ref {})", k.omega0_rel,
                       k.omega_b_ps, s22, k.expected));
  }
}

double max_diff(const Su2Propagator& a, const Su2Propagator& b) {
  return std::max({std::abs(a.uI - b.uI), std::abs(a.ux - b.ux), std::abs(a.uy - b.uy),
                   std::abs(a.uz - b.uz)});
}

void properties(Check& c) {
  std::mt19937_64 rng(2024);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto cx = [&] { return cplx(uni(-1, 1), uni(-1, 1)); };

  // Pauli composition against explicit matrix products.
  double worst_compose = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Su2Propagator a{cx(), cx(), cx(), cx()}, b{cx(), cx(), cx(), cx()},
        d{cx(), cx(), cx(), cx()};
    const auto m = [](const Matrix2& x, const Matrix2& y) {
      Matrix2 r{};
      for (int r0 = 0; r0 < 2; ++r0)
        for (int c0 = 0; c0 < 2; ++c0) r[r0][c0] = x[r0][0] * y[0][c0] + x[r0][1] * y[1][c0];
      return r;
    };
    const auto prod = Su2Propagator::from_matrix(m(a.matrix(), m(b.matrix(), d.matrix())));
    worst_compose = std::max(worst_compose, max_diff(a * (b * d), prod));
  }
  c.require(worst_compose < 1e-13, fmt::format("compose mismatch {:.2e}", worst_compose));

  // Norm, dark amplitude, unitarity and trace conservation on random envelopes.
  double worst_norm = 0.0, worst_dark = 0.0, worst_trace = 0.0, worst_unitary = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double omax = uni(1.0, 12.0);
    const SystemParams p(1.0, omax);
    std::vector<PulseSegment> segs;
    for (double t = 0.0; t < 3.0;) {
      segs.push_back({uni(0.0, omax), uni(0.05, 0.6)});
      t += segs.back().duration;
    }
    const PulseSequence seq(segs);
    const ControlEnvelope env = PiecewiseEnvelope{seq, 0.0};
    worst_unitary = std::max(worst_unitary, sequence_propagator(p, seq).unitarity_defect());
    const ThreeLevelState s0{cplx(0.6, 0.0), cplx(0.0, 0.48), cplx(0.64, 0.0)};
    const cplx dark = s0.dark_amplitude();
    for (const auto& pt : propagate_three_level(p, env, {0.0, 3.0}, s0, 1e-3)) {
      worst_norm = std::max(worst_norm, std::abs(pt.state.norm_squared() - 1.0));
      worst_dark = std::max(worst_dark, std::abs(pt.state.dark_amplitude() - dark));
    }
    const auto rates = RateParams::uniform(uni(0.0, 0.2), uni(0.0, 0.2));
    for (const auto& pt : propagate_density(p, rates, env, {0.0, 3.0}, DensityState{}, 1e-3)) {
      worst_trace = std::max(worst_trace, std::abs(pt.state.trace() - 1.0));
    }
  }
  c.require(worst_norm < 1e-8, fmt::format("norm drift {:.2e}", worst_norm));
  c.require(worst_dark < 1e-8, fmt::format("dark amplitude drift {:.2e}", worst_dark));
  c.require(worst_trace < 1e-10, fmt::format("trace drift {:.2e}", worst_trace));
  c.require(worst_unitary < 1e-12, fmt::format("unitarity defect {:.2e}", worst_unitary));

  // Analytic propagator against RK4 on the bright two-level system.
  double worst_rk4 = 0.0;
  for (double amp : {kSechAmp, 10.0, 50.0}) {
    const SystemParams p(1.0, amp);
    const auto seq = design_on_off_on(p).lower.sequence(p);
    const auto m = sequence_propagator(p, seq).matrix();
    const cplx g = std::polar(1.0, seq.total_duration());
    const ControlEnvelope env = PiecewiseEnvelope{seq, 0.0};
    const auto traj = propagate_two_level(p, env, {0.0, seq.total_duration()}, {kInvSqrt2, 0.0},
                                          default_step(p, env));
    const auto& f = traj.back().state;
    worst_rk4 = std::max<double>({worst_rk4, std::abs(f.a - g * m[0][0] * kInvSqrt2),
                          std::abs(f.b - g * m[1][0] * kInvSqrt2)});
  }
  c.require(worst_rk4 < 1e-8, fmt::format("analytic vs RK4 {:.2e}", worst_rk4));

  // Gradient against central differences.
  double worst_grad = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double omax = uni(2.5, 20.0);
    const SystemParams p(1.0, omax);
    const double T = uni(0.5, 3.0);
    std::vector<double> v(40), grad(40);
    for (auto& x : v) x = uni(0.0, omax);
    final_error_gradient(p, T, v, grad);
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      auto up = v, dn = v;
      up[k] += 1e-6;
      dn[k] -= 1e-6;
      const double fd = (final_error(p, T, up) - final_error(p, T, dn)) / 2e-6;
      err = std::max(err, std::abs(fd - grad[k]));
      scale = std::max(scale, std::abs(grad[k]));
    }
    worst_grad = std::max(worst_grad, err / scale);
  }
  c.require(worst_grad < 1e-5, fmt::format("gradient relative error {:.2e}", worst_grad));

  // Fourth-order convergence on a constant pulse.
  const double amp = 3.7;
  const SystemParams p(1.0, amp);
  const auto m = constant_propagator(p, amp, 2.3).matrix();
  const cplx g = std::polar(1.0, 2.3);
  auto err = [&](double dt) {
    const auto s =
        propagate_two_level(p, ConstantEnvelope{amp}, {0.0, 2.3}, {kInvSqrt2, 0.0}, dt).back().state;
    return std::hypot(std::abs(s.a - g * m[0][0] * kInvSqrt2), std::abs(s.b - g * m[1][0] * kInvSqrt2));
  };
  const double ratio = err(0.02) / err(0.01);
  c.require(ratio >= 12.0 && ratio <= 20.0, fmt::format("RK4 ratio {:.2f}", ratio));

  c.note(fmt::format("compose={:.1e} norm={:.1e} dark={:.1e} trace={:.1e} rk4={:.1e} grad={:.1e} "
                     "ratio={:.2f}",
                     worst_compose, worst_norm, worst_dark, worst_trace, worst_rk4, worst_grad,
                     ratio));
}

struct Criterion {
  std::string id;
  std::string title;
  double budget;  ///< seconds, 0 = none
  std::function<void(Check&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1", "constant pulse design", 1.0, constant_pulse},
      {"2", "sech design n = 2", 5.0, sech_pulse},
      {"3", "on-off-on at 4 sqrt(2/3)", 1.0, onoffon_low},
      {"4", "on-off-on at 10", 1.0, onoffon_high},
      {"5", "threshold behaviour", 1.0, threshold},
      {"6", "asymptote of T(Omega0)", 1.0, asymptote},
      {"7", "minimum-time coincidence, dT = 0.01", 0.0, scan_full},
      {"7q", "minimum-time coincidence, quick", 60.0, scan_quick},
      {"8", "dissipative fidelities", 10.0, dissipative},
      {"9", "property suites", 0.0, properties},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.failures.push_back(fmt::format("exception: {}", e.what()));
    }
    const double elapsed = seconds_since(t0);
    if (cr.budget > 0.0 && elapsed >= cr.budget) {
      check.failures.push_back(fmt::format("runtime {:.2f} s over {:.0f} s", elapsed, cr.budget));
    }
    const bool ok = check.failures.empty();
    failed += ok ? 0 : 1;
    fmt::print("[{}] criterion {:<3} {:<40} {:8.2f} s\n", ok ? "PASS" : "FAIL", cr.id, cr.title,
               elapsed);
    for (const auto& n : check.notes) fmt::print("       {}\n", n);
    for (const auto& f : check.failures) fmt::print("       !! {}\n", f);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
