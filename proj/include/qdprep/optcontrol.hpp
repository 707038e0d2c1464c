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

// Bounded piecewise-constant optimal control of the final biexciton error
//   P_e = 1 - |c2(T)|^2,   0 <= Omega(t) <= Omega0,
// used to locate the numerical minimum preparation time.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qdprep/box_minimizer.hpp"
#include "qdprep/kernels/kernels.hpp"
#include "qdprep/model.hpp"

namespace qdprep {

struct ControlGrid {
  double T = 0.0;
  std::vector<double> values;  ///< slice amplitudes in [0, Omega0]

  std::size_t n_slices() const noexcept { return values.size(); }
  double slice_width() const noexcept { return T / static_cast<double>(values.size()); }
  PulseSequence sequence() const;
};

/// Final error of a piecewise-constant control, computed from the analytic
/// slice propagators of the bright two-level system.
double final_error(const SystemParams& params, double T, std::span<const double> values);

/// Same, with the exact gradient with respect to every slice amplitude.
double final_error_gradient(const SystemParams& params, double T,
                            std::span<const double> values, std::span<double> grad,
                            const kernels::KernelTable& kernels = kernels::active());

/// Slice amplitudes reproducing the minimum-time on-off-on sequence, its
/// segment durations stretched to T. Switching slices hold the time-average.
/// Falls back to a constant Omega0 control below the on-off-on threshold.
std::vector<double> bang_bang_initialization(const SystemParams& params, double T,
                                             std::size_t n_slices);

struct OptimizeOptions {
  std::size_t n_slices = 200;
  int restarts = 8;
  std::uint64_t seed = 0;
  /// Random restarts are skipped when the bang-bang start already gets below this.
  double skip_restarts_below = 1e-10;
  BoxMinimizerOptions minimizer{.max_iterations = 3000, .target_value = 1e-14};
};

struct StartResult {
  std::vector<double> values;
  double error = 1.0;
  bool converged = false;
  int iterations = 0;
};

struct OptimizeResult {
  ControlGrid control;
  double error = 1.0;
  bool converged = false;
  int restarts_used = 0;        ///< random restarts actually run
  std::size_t best_start = 0;   ///< 0 = bang-bang start, r = random restart r
  std::vector<double> start_errors;
};

/// One start: index 0 is the bang-bang initialization, index r >= 1 the r-th
/// random restart, seeded from (seed, Omega0, T, r).
StartResult optimize_from_start(const SystemParams& params, double T,
                                const OptimizeOptions& opts, std::size_t start_index);

/// Multi-start minimization of P_e. Throws InvalidArgument if T <= 0 or
/// n_slices < 2; non-convergence is reported in the result, not thrown.
OptimizeResult optimize_control(const SystemParams& params, double T,
                                const OptimizeOptions& opts = {});

struct ScanPoint {
  double T = 0.0;
  double best_error = 1.0;
  int restarts_used = 0;
  bool converged = false;
};

struct ScanOptions {
  double t_begin = 0.0;
  double t_end = 0.0;
  double dT = 0.01;
  double error_threshold = 1e-4;
  OptimizeOptions optimizer;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

struct ScanResult {
  std::optional<double> t_min;
  std::vector<ScanPoint> points;

  /// Throws NoFeasibleT when no scanned duration met the threshold.
  double min_time() const;
};

/// Durations k*dT inside [t_begin, t_end].
std::vector<double> scan_grid(double t_begin, double t_end, double dT);

/// Optimizes at every grid duration; T_min is the smallest duration whose
/// best error is below the threshold. (T, start) jobs run in parallel and
/// merge in a fixed order, so results do not depend on the thread count.
ScanResult scan_min_time(const SystemParams& params, const ScanOptions& opts);

struct CoincidenceRow {
  double omega0 = 0.0;
  double T_analytic = 0.0;
  std::optional<double> T_numeric;
  double gap() const noexcept;  ///< |T_numeric - T_analytic|, infinity if missing
};

struct CoincidenceOptions {
  ScanOptions scan;             ///< t_begin/t_end are ignored
  double window_below = 0.10;   ///< scan from T_analytic - window_below
  double window_above = 0.05;   ///< to T_analytic + window_above (capped at pi/omega_b)
};

struct CoincidenceReport {
  std::vector<CoincidenceRow> rows;
  std::vector<std::vector<ScanPoint>> curves;  ///< one scan per row
};

/// Analytic on-off-on duration against the numerically scanned minimum time
/// for each amplitude.
CoincidenceReport coincidence_report(double omega_b, std::span<const double> amplitudes,
                                     const CoincidenceOptions& opts);

/// `omega0,T,Pe,converged,restarts`
void write_scan_csv(std::ostream& os, double omega0, std::span<const ScanPoint> points,
                    bool header = true);
/// `omega0,T_analytic,T_numeric,gap`
void write_coincidence_csv(std::ostream& os, std::span<const CoincidenceRow> rows);

}  // namespace qdprep
