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

#include "qdprep/optcontrol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "parallel.hpp"
#include "qdprep/design.hpp"
#include "qdprep/error.hpp"
#include "qdprep/propagators.hpp"

namespace qdprep {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t start_seed(std::uint64_t seed, double omega0, double T, std::size_t start) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(omega0));
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(T));
  return splitmix64(h ^ static_cast<std::uint64_t>(start));
}

// Uniform in [0, 1) from the top 53 bits; unlike std::uniform_real_distribution
// the sequence is identical across standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_problem(double T, std::size_t n_slices) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    raise(ErrorKind::InvalidArgument, fmt::format("duration must be positive, got {}", T));
  }
  if (n_slices < 2) {
    raise(ErrorKind::InvalidArgument, fmt::format("need at least 2 slices, got {}", n_slices));
  }
}

// P_e from the (0,0) element of the bright propagator:
//   c2(T) = (exp(i wb T) U00 - 1) / 2.
double error_from_u00(cplx global, cplx u00) { return 1.0 - 0.25 * std::norm(global * u00 - 1.0); }

}  // namespace

PulseSequence ControlGrid::sequence() const {
  std::vector<PulseSegment> segs;
  segs.reserve(values.size());
  const double w = slice_width();
  for (double v : values) segs.push_back({v, w});
  return PulseSequence(std::move(segs));
}

double final_error(const SystemParams& params, double T, std::span<const double> values) {
  check_problem(T, values.size());
  const double w = T / static_cast<double>(values.size());
  Su2Propagator u = Su2Propagator::identity();
  for (double v : values) u = compose(constant_propagator(params, v, w), u);
  return error_from_u00(std::polar(1.0, params.omega_b() * T), u.uI + u.uz);
}

double final_error_gradient(const SystemParams& params, double T,
                            std::span<const double> values, std::span<double> grad,
                            const kernels::KernelTable& k) {
  const std::size_t n = values.size();
  check_problem(T, n);
  if (grad.size() != n) raise(ErrorKind::InvalidArgument, "gradient size mismatch");

  kernels::SliceBatch slices;
  kernels::slice_propagators(k, params.omega_b(), T / static_cast<double>(n), values, slices);

  // before[j] = U_{j-1} ... U_0, after[j] = U_{n-1} ... U_{j+1}
  kernels::Su2Batch before(n), after(n), derivative(n), tmp(n), chain(n);
  Su2Propagator acc = Su2Propagator::identity();
  for (std::size_t j = 0; j < n; ++j) {
    before.set(j, acc);
    acc = compose(slices.propagator(j), acc);
    derivative.set(j, slices.derivative(j));
  }
  const Su2Propagator total = acc;
  acc = Su2Propagator::identity();
  for (std::size_t j = n; j-- > 0;) {
    after.set(j, acc);
    acc = compose(acc, slices.propagator(j));
  }
  kernels::compose(k, derivative, before, tmp);
  kernels::compose(k, after, tmp, chain);

  const cplx global = std::polar(1.0, params.omega_b() * T);
  const cplx z = global * (total.uI + total.uz) - 1.0;
  // dP/du = -(1/2) Re[conj(z) exp(i wb T) dU00/du]
  const cplx factor = -0.5 * std::conj(z) * global;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx du00{chain.re_I[j] + chain.re_z[j], chain.im_I[j] + chain.im_z[j]};
    grad[j] = (factor * du00).real();
  }
  return 1.0 - 0.25 * std::norm(z);
}

std::vector<double> bang_bang_initialization(const SystemParams& params, double T,
                                             std::size_t n_slices) {
  check_problem(T, n_slices);
  const double top = params.omega_max();
  std::vector<double> values(n_slices, top);
  if (top <= onoffon_threshold(params.omega_b())) return values;

  const auto design = design_on_off_on(params).lower;
  const double stretch = T / design.total_T;
  const double off_begin = design.tau1 * stretch;
  const double off_end = (design.tau1 + design.tau2) * stretch;
  const double w = T / static_cast<double>(n_slices);
  for (std::size_t j = 0; j < n_slices; ++j) {
    const double a = w * static_cast<double>(j);
    const double b = a + w;
    double off = std::max(0.0, std::min(b, off_end) - std::max(a, off_begin)) / w;
    if (off < 1e-9) off = 0.0;
    if (off > 1.0 - 1e-9) off = 1.0;
    values[j] = top * (1.0 - off);
  }
  return values;
}

StartResult optimize_from_start(const SystemParams& params, double T,
                                const OptimizeOptions& opts, std::size_t start_index) {
  check_problem(T, opts.n_slices);
  const std::size_t n = opts.n_slices;
  const double top = params.omega_max();
  std::vector<double> x0;
  if (start_index == 0) {
    x0 = bang_bang_initialization(params, T, n);
  } else {
    std::mt19937_64 rng(start_seed(opts.seed, top, T, start_index));
    x0.resize(n);
    for (auto& v : x0) v = top * uniform01(rng);
  }
  const std::vector<double> lower(n, 0.0), upper(n, top);
  const auto& k = kernels::active();
  auto objective = [&](std::span<const double> x, std::span<double> g) {
    return final_error_gradient(params, T, x, g, k);
  };
  auto r = minimize_box(objective, std::move(x0), lower, upper, opts.minimizer);
  return {std::move(r.x), std::clamp(r.value, 0.0, 1.0), r.converged, r.iterations};
}

namespace {

OptimizeResult merge_starts(double T, std::vector<StartResult> starts) {
  OptimizeResult out;
  out.restarts_used = static_cast<int>(starts.size()) - 1;
  std::size_t best = 0;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    out.start_errors.push_back(starts[i].error);
    if (starts[i].error < starts[best].error) best = i;
  }
  out.best_start = best;
  out.error = starts[best].error;
  out.converged = starts[best].converged;
  out.control = ControlGrid{T, std::move(starts[best].values)};
  return out;
}

}  // namespace

OptimizeResult optimize_control(const SystemParams& params, double T,
                                const OptimizeOptions& opts) {
  check_problem(T, opts.n_slices);
  std::vector<StartResult> starts;
  starts.push_back(optimize_from_start(params, T, opts, 0));
  if (starts.front().error >= opts.skip_restarts_below) {
    for (int r = 1; r <= opts.restarts; ++r) {
      starts.push_back(optimize_from_start(params, T, opts, static_cast<std::size_t>(r)));
    }
  }
  return merge_starts(T, std::move(starts));
}

double ScanResult::min_time() const {
  if (!t_min) {
    raise(ErrorKind::NoFeasibleT,
          fmt::format("no scanned duration reached the error threshold ({} points)",
                      points.size()));
  }
  return *t_min;
}

std::vector<double> scan_grid(double t_begin, double t_end, double dT) {
  if (!(dT > 0.0)) raise(ErrorKind::InvalidArgument, "scan step must be positive");
  const auto first = static_cast<long>(std::ceil(t_begin / dT - 1e-9));
  const auto last = static_cast<long>(std::floor(t_end / dT + 1e-9));
  std::vector<double> grid;
  for (long k = std::max(first, 1L); k <= last; ++k) grid.push_back(static_cast<double>(k) * dT);
  return grid;
}

ScanResult scan_min_time(const SystemParams& params, const ScanOptions& opts) {
  const double upper = std::numbers::pi / params.omega_b();
  if (!(opts.t_begin > 0.0) || !(opts.t_end >= opts.t_begin) || opts.t_end > upper * (1 + 1e-12)) {
    raise(ErrorKind::InvalidArgument,
          fmt::format("scan range [{}, {}] must lie within (0, pi/omega_b]", opts.t_begin,
                      opts.t_end));
  }
  const std::vector<double> grid = scan_grid(opts.t_begin, opts.t_end, opts.dT);
  const auto& optimizer = opts.optimizer;

  // Phase 1: bang-bang start for every duration.
  std::vector<std::vector<StartResult>> starts(grid.size());
  detail::parallel_for(grid.size(), opts.threads, [&](std::size_t i) {
    starts[i].push_back(optimize_from_start(params, grid[i], optimizer, 0));
  });
  // Phase 2: random restarts where the bang-bang start fell short.
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (starts[i].front().error >= optimizer.skip_restarts_below) {
      starts[i].resize(1 + static_cast<std::size_t>(std::max(optimizer.restarts, 0)));
      for (int r = 1; r <= optimizer.restarts; ++r) jobs.emplace_back(i, r);
    }
  }
  detail::parallel_for(jobs.size(), opts.threads, [&](std::size_t j) {
    const auto [i, r] = jobs[j];
    starts[i][r] = optimize_from_start(params, grid[i], optimizer, r);
  });

  ScanResult out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const OptimizeResult r = merge_starts(grid[i], std::move(starts[i]));
    out.points.push_back({grid[i], r.error, r.restarts_used, r.converged});
    if (!out.t_min && r.error < opts.error_threshold) out.t_min = grid[i];
  }
  return out;
}

double CoincidenceRow::gap() const noexcept {
  return T_numeric ? std::abs(*T_numeric - T_analytic) : std::numeric_limits<double>::infinity();
}

CoincidenceReport coincidence_report(double omega_b, std::span<const double> amplitudes,
                                     const CoincidenceOptions& opts) {
  CoincidenceReport report;
  const double upper = std::numbers::pi / omega_b;
  for (double a : amplitudes) {
    const SystemParams params(omega_b, a);
    const double t_analytic = design_on_off_on(params).lower.total_T;
    ScanOptions scan = opts.scan;
    scan.t_begin = std::max(scan.dT, t_analytic - opts.window_below);
    scan.t_end = std::min(upper, t_analytic + opts.window_above);
    ScanResult r = scan_min_time(params, scan);
    report.rows.push_back({a, t_analytic, r.t_min});
    report.curves.push_back(std::move(r.points));
  }
  return report;
}

void write_scan_csv(std::ostream& os, double omega0, std::span<const ScanPoint> points,
                    bool header) {
  if (header) os << "omega0,T,Pe,converged,restarts\n";
  for (const auto& p : points) {
    os << fmt::format("{:.10g},{:.10g},{:.6e},{},{}\n", omega0, p.T, p.best_error,
                      p.converged ? 1 : 0, p.restarts_used);
  }
}

void write_coincidence_csv(std::ostream& os, std::span<const CoincidenceRow> rows) {
  os << "omega0,T_analytic,T_numeric,gap\n";
  for (const auto& r : rows) {
    if (r.T_numeric) {
      os << fmt::format("{:.10g},{:.10g},{:.10g},{:.6g}\n", r.omega0, r.T_analytic, *r.T_numeric,
                        r.gap());
    } else {
      os << fmt::format("{:.10g},{:.10g},nan,inf\n", r.omega0, r.T_analytic);
    }
  }
}

}  // namespace qdprep
