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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qdprep {

/// Objective callback: returns f(x) and writes the gradient into grad.
using BoxObjective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct BoxMinimizerOptions {
  int max_iterations = 3000;
  int history = 12;
  double gradient_tolerance = 1e-10;  ///< on the projected gradient, inf-norm
  double target_value = 0.0;          ///< stop as soon as f <= target_value
  double stall_tolerance = 1e-13;     ///< relative decrease counted as a stall
  int stall_iterations = 8;
  double initial_step = 0.1;  ///< first steepest-descent move, as a fraction of the box width
};

struct BoxMinimizerResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;  ///< false only when the iteration cap was hit
};

/// Projected limited-memory BFGS on a box. Variables pinned at a bound with
/// the gradient pointing outward are frozen for the quasi-Newton step; the
/// step is projected back onto the box and accepted by Armijo backtracking
/// along the projection arc.
BoxMinimizerResult minimize_box(const BoxObjective& objective, std::vector<double> x0,
                                std::span<const double> lower, std::span<const double> upper,
                                const BoxMinimizerOptions& opts = {});

}  // namespace qdprep
