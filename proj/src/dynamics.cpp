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

#include "qdprep/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <ostream>

#include "qdprep/error.hpp"

namespace qdprep {

namespace {

constexpr cplx kI{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <std::size_t N>
using Vec = std::array<cplx, N>;

template <std::size_t N>
Vec<N> axpy(const Vec<N>& y, double h, const Vec<N>& k) {
  Vec<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * k[i];
  return out;
}

/// Integrates dy/dt = rhs(omega, y) over the span, calling observe(t, y)
/// after every step (and once at the start). Steps never cross a switch time.
template <std::size_t N, typename Rhs, typename Observe>
void rk4(const ControlEnvelope& env, TimeSpan span, double dt, Vec<N> y, Rhs&& rhs,
         Observe&& observe) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    raise(ErrorKind::InvalidArgument, fmt::format("time step must be positive, got {}", dt));
  }
  if (!(span.end >= span.start)) {
    raise(ErrorKind::InvalidArgument,
          fmt::format("time span [{}, {}] is reversed", span.start, span.end));
  }
  std::vector<double> nodes{span.start};
  for (double s : env.switch_times(span.start, span.end)) nodes.push_back(s);
  nodes.push_back(span.end);

  const bool piecewise = env.is_piecewise_constant();
  observe(span.start, y);
  for (std::size_t seg = 0; seg + 1 < nodes.size(); ++seg) {
    const double a = nodes[seg];
    const double b = nodes[seg + 1];
    const double len = b - a;
    if (len <= 0.0) continue;
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(len / dt - 1e-9)));
    const double h = len / static_cast<double>(steps);
    const double held = piecewise ? env.evaluate(0.5 * (a + b)) : 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
      const double t = a + h * static_cast<double>(k);
      const double w0 = piecewise ? held : env.evaluate(t);
      const double wm = piecewise ? held : env.evaluate(t + 0.5 * h);
      const double w1 = piecewise ? held : env.evaluate(t + h);
      const Vec<N> k1 = rhs(w0, y);
      const Vec<N> k2 = rhs(wm, axpy(y, 0.5 * h, k1));
      const Vec<N> k3 = rhs(wm, axpy(y, 0.5 * h, k2));
      const Vec<N> k4 = rhs(w1, axpy(y, h, k3));
      for (std::size_t i = 0; i < N; ++i) {
        y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
      // The last step lands on b exactly.
      observe(k + 1 == steps ? b : t + h, y);
    }
  }
}

void check_norm_drift(double norm, double reference, double t) {
  const double drift = std::abs(norm - reference);
  if (!(drift <= 1e-6)) {
    raise(ErrorKind::StepTooLarge,
          fmt::format("norm drifted by {:.3e} at t = {}; reduce the time step", drift, t));
  }
}

}  // namespace

ControlEnvelope::ControlEnvelope(Kind kind) : kind_(std::move(kind)) {
  std::visit(overloaded{
                 [](const ConstantEnvelope& e) {
                   if (!(e.omega0 >= 0.0)) {
                     raise(ErrorKind::InvalidArgument, "constant envelope needs omega0 >= 0");
                   }
                 },
                 [](const SechEnvelope& e) {
                   if (!(e.omega0 >= 0.0) || !(e.t_p > 0.0)) {
                     raise(ErrorKind::InvalidArgument,
                           "sech envelope needs omega0 >= 0 and t_p > 0");
                   }
                 },
                 [](const PiecewiseEnvelope&) {},
                 [](const SampledEnvelope& e) {
                   for (std::size_t i = 0; i < e.samples.size(); ++i) {
                     if (e.samples[i].second < 0.0) {
                       raise(ErrorKind::InvalidArgument, "sampled envelope must be >= 0");
                     }
                     if (i > 0 && !(e.samples[i].first > e.samples[i - 1].first)) {
                       raise(ErrorKind::InvalidArgument,
                             "sampled envelope times must increase strictly");
                     }
                   }
                 },
             },
             kind_);
}

double ControlEnvelope::evaluate(double t) const {
  return std::visit(
      overloaded{
          [](const ConstantEnvelope& e) { return e.omega0; },
          [t](const SechEnvelope& e) { return e.omega0 / std::cosh((t - e.t_center) / e.t_p); },
          [t](const PiecewiseEnvelope& e) { return e.sequence.amplitude_at(t - e.t_start); },
          [t](const SampledEnvelope& e) {
            if (e.samples.empty() || t < e.samples.front().first ||
                t >= e.samples.back().first) {
              return 0.0;
            }
            auto it = std::upper_bound(
                e.samples.begin(), e.samples.end(), t,
                [](double v, const std::pair<double, double>& s) { return v < s.first; });
            return std::prev(it)->second;
          },
      },
      kind_);
}

std::vector<double> ControlEnvelope::switch_times(double t0, double t1) const {
  std::vector<double> out;
  auto keep = [&](double s) {
    if (s > t0 && s < t1) out.push_back(s);
  };
  std::visit(overloaded{
                 [](const ConstantEnvelope&) {},
                 [](const SechEnvelope&) {},
                 [&](const PiecewiseEnvelope& e) {
                   double t = e.t_start;
                   keep(t);
                   for (const auto& seg : e.sequence.segments()) {
                     t += seg.duration;
                     keep(t);
                   }
                 },
                 [&](const SampledEnvelope& e) {
                   for (const auto& s : e.samples) keep(s.first);
                 },
             },
             kind_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool ControlEnvelope::is_piecewise_constant() const noexcept {
  return !std::holds_alternative<SechEnvelope>(kind_);
}

std::optional<double> ControlEnvelope::shortest_segment() const {
  const auto* pw = std::get_if<PiecewiseEnvelope>(&kind_);
  if (pw == nullptr) return std::nullopt;
  std::optional<double> best;
  for (const auto& seg : pw->sequence.segments()) {
    if (seg.duration > 0.0 && (!best || seg.duration < *best)) best = seg.duration;
  }
  return best;
}

void RateParams::validate() const {
  for (double r : {Gamma11, Gamma22, gamma01, gamma02, gamma12}) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      raise(ErrorKind::InvalidArgument, fmt::format("rates must be non-negative, got {}", r));
    }
  }
}

DensityState DensityState::from_pure(const ThreeLevelState& psi) noexcept {
  DensityState d;
  d.s00 = std::norm(psi.c0);
  d.s11 = std::norm(psi.c1);
  d.s22 = std::norm(psi.c2);
  d.s01 = psi.c0 * std::conj(psi.c1);
  d.s02 = psi.c0 * std::conj(psi.c2);
  d.s12 = psi.c1 * std::conj(psi.c2);
  return d;
}

double default_step(const SystemParams& params, const ControlEnvelope& env) {
  double dt = 1e-3 / params.omega_b();
  if (auto shortest = env.shortest_segment()) dt = std::min(dt, *shortest / 50.0);
  return dt;
}

Trajectory<ThreeLevelState> propagate_three_level(const SystemParams& params,
                                                  const ControlEnvelope& env, TimeSpan span,
                                                  const ThreeLevelState& initial, double dt) {
  const double wb2 = 2.0 * params.omega_b();
  const double norm0 = initial.norm_squared();
  Trajectory<ThreeLevelState> traj;
  auto rhs = [wb2](double omega, const Vec<3>& c) {
    // -i H c with H = [[0, -w/2, 0], [-w/2, -2 wb, -w/2], [0, -w/2, 0]]
    const double half = 0.5 * omega;
    return Vec<3>{kI * half * c[1], kI * (half * (c[0] + c[2]) + wb2 * c[1]), kI * half * c[1]};
  };
  rk4<3>(env, span, dt, Vec<3>{initial.c0, initial.c1, initial.c2}, rhs,
         [&](double t, const Vec<3>& c) {
           ThreeLevelState s{c[0], c[1], c[2]};
           check_norm_drift(s.norm_squared(), norm0, t);
           traj.push_back({t, s});
         });
  return traj;
}

Trajectory<TwoLevelState> propagate_two_level(const SystemParams& params,
                                              const ControlEnvelope& env, TimeSpan span,
                                              const TwoLevelState& initial, double dt) {
  const double wb2 = 2.0 * params.omega_b();
  const double norm0 = initial.norm_squared();
  Trajectory<TwoLevelState> traj;
  auto rhs = [wb2](double omega, const Vec<2>& a) {
    // -i [[0, -w/sqrt2], [-w/sqrt2, -2 wb]] a
    const double g = omega * kInvSqrt2;
    return Vec<2>{kI * g * a[1], kI * (g * a[0] + wb2 * a[1])};
  };
  rk4<2>(env, span, dt, Vec<2>{initial.a, initial.b}, rhs, [&](double t, const Vec<2>& a) {
    TwoLevelState s{a[0], a[1]};
    check_norm_drift(s.norm_squared(), norm0, t);
    traj.push_back({t, s});
  });
  return traj;
}

Trajectory<DensityState> propagate_density(const SystemParams& params, const RateParams& rates,
                                           const ControlEnvelope& env, TimeSpan span,
                                           const DensityState& initial, double dt) {
  rates.validate();
  if (std::abs(initial.trace() - 1.0) > 1e-9) {
    raise(ErrorKind::InvalidArgument,
          fmt::format("initial density matrix has trace {}", initial.trace()));
  }
  const double wb2 = 2.0 * params.omega_b();
  Trajectory<DensityState> traj;
  // y = (s00, s11, s22, s01, s02, s12); populations are carried as complex
  // numbers with zero imaginary part.
  auto rhs = [wb2, rates](double omega, const Vec<6>& y) {
    const double half = 0.5 * omega;
    const cplx s00 = y[0], s11 = y[1], s22 = y[2], s01 = y[3], s02 = y[4], s12 = y[5];
    const cplx s10 = std::conj(s01), s21 = std::conj(s12);
    const cplx d00 = rates.Gamma11 * s11 + kI * half * s10 - kI * half * s01;
    const cplx d22 = -rates.Gamma22 * s22 + kI * half * s12 - kI * half * s21;
    const cplx d01 =
        -(kI * wb2 + rates.gamma01) * s01 + kI * half * (s11 - s00) - kI * half * s02;
    const cplx d02 = -rates.gamma02 * s02 + kI * half * (s12 - s01);
    const cplx d12 = (kI * wb2 - rates.gamma12) * s12 + kI * half * (s22 - s11) + kI * half * s02;
    return Vec<6>{d00, -d00 - d22, d22, d01, d02, d12};
  };
  const Vec<6> y0{initial.s00, initial.s11, initial.s22, initial.s01, initial.s02, initial.s12};
  rk4<6>(env, span, dt, y0, rhs, [&](double t, const Vec<6>& y) {
    DensityState d{y[0].real(), y[1].real(), y[2].real(), y[3], y[4], y[5]};
    if (!(std::abs(d.trace() - 1.0) <= 1e-6)) {
      raise(ErrorKind::TraceDrift, fmt::format("trace drifted to {} at t = {}", d.trace(), t));
    }
    if (std::min({d.s00, d.s11, d.s22}) < -1e-6) {
      raise(ErrorKind::NegativePopulation,
            fmt::format("population below zero at t = {} ({}, {}, {})", t, d.s00, d.s11, d.s22));
    }
    traj.push_back({t, d});
  });
  return traj;
}

void write_csv(std::ostream& os, const Trajectory<ThreeLevelState>& traj,
               const CsvOptions& opts) {
  if (!opts.metadata.empty()) os << "# " << opts.metadata << '\n';
  os << "t,re_c0,im_c0,re_c1,im_c1,re_c2,im_c2,pop2\n";
  for (const auto& p : traj) {
    const auto& s = p.state;
    os << fmt::format("{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n",
                      p.t * opts.time_scale, s.c0.real(), s.c0.imag(), s.c1.real(), s.c1.imag(),
                      s.c2.real(), s.c2.imag(), std::norm(s.c2));
  }
}

void write_csv(std::ostream& os, const Trajectory<DensityState>& traj, const CsvOptions& opts) {
  if (!opts.metadata.empty()) os << "# " << opts.metadata << '\n';
  os << "t,s00,s11,s22,re_s01,im_s01,re_s02,im_s02,re_s12,im_s12\n";
  for (const auto& p : traj) {
    const auto& d = p.state;
    os << fmt::format("{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n",
                      p.t * opts.time_scale, d.s00, d.s11, d.s22, d.s01.real(), d.s01.imag(),
                      d.s02.real(), d.s02.imag(), d.s12.real(), d.s12.imag());
  }
}

}  // namespace qdprep
