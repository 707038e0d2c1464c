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

#include "qdprep/box_minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "qdprep/error.hpp"

namespace qdprep {

namespace {

struct Pair {
  std::vector<double> s, y;
  double rho;
};

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double dot_masked(std::span<const double> a, std::span<const double> b,
                  const std::vector<char>& mask) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (mask[i]) acc += a[i] * b[i];
  }
  return acc;
}

}  // namespace

BoxMinimizerResult minimize_box(const BoxObjective& objective, std::vector<double> x0,
                                std::span<const double> lower, std::span<const double> upper,
                                const BoxMinimizerOptions& opts) {
  const std::size_t n = x0.size();
  if (lower.size() != n || upper.size() != n) {
    raise(ErrorKind::InvalidArgument, "minimize_box: bound size mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] <= upper[i])) raise(ErrorKind::InvalidArgument, "minimize_box: empty box");
  }
  auto project = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  };

  BoxMinimizerResult res;
  std::vector<double> x = std::move(x0);
  project(x);
  std::vector<double> g(n), g_new(n), x_new(n), d(n), q(n);
  std::vector<char> free(n);
  double f = objective(x, g);
  res.evaluations = 1;

  double width = 0.0;
  for (std::size_t i = 0; i < n; ++i) width = std::max(width, upper[i] - lower[i]);
  if (width == 0.0) width = 1.0;

  std::deque<Pair> memory;
  int stalls = 0;
  res.converged = false;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (f <= opts.target_value) {
      res.converged = true;
      break;
    }
    double pg_norm = 0.0;
    double g_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      pg_norm = std::max(pg_norm, std::abs(std::clamp(x[i] - g[i], lower[i], upper[i]) - x[i]));
      const bool pinned = (x[i] <= lower[i] && g[i] > 0.0) || (x[i] >= upper[i] && g[i] < 0.0);
      free[i] = pinned ? 0 : 1;
      if (!pinned) g_norm = std::max(g_norm, std::abs(g[i]));
    }
    if (pg_norm <= opts.gradient_tolerance) {
      res.converged = true;
      break;
    }

    // Two-loop recursion restricted to the free variables.
    for (std::size_t i = 0; i < n; ++i) q[i] = free[i] ? g[i] : 0.0;
    std::vector<double> alpha(memory.size());
    for (std::size_t j = memory.size(); j-- > 0;) {
      alpha[j] = memory[j].rho * dot_masked(memory[j].s, q, free);
      for (std::size_t i = 0; i < n; ++i) {
        if (free[i]) q[i] -= alpha[j] * memory[j].y[i];
      }
    }
    bool quasi_newton = !memory.empty();
    if (quasi_newton) {
      const Pair& last = memory.back();
      const double yy = dot_masked(last.y, last.y, free);
      const double sy = dot_masked(last.s, last.y, free);
      const double gamma = (yy > 0.0 && sy > 0.0) ? sy / yy : 1.0 / std::max(g_norm, 1e-300);
      for (auto& v : q) v *= gamma;
      for (std::size_t j = 0; j < memory.size(); ++j) {
        const double beta = memory[j].rho * dot_masked(memory[j].y, q, free);
        for (std::size_t i = 0; i < n; ++i) {
          if (free[i]) q[i] += (alpha[j] - beta) * memory[j].s[i];
        }
      }
      for (std::size_t i = 0; i < n; ++i) d[i] = free[i] ? -q[i] : 0.0;
      const double gd = dot(g, d);
      if (!(gd < 0.0) || !std::isfinite(gd)) quasi_newton = false;
    }
    if (!quasi_newton) {
      memory.clear();
      const double scale = opts.initial_step * width / std::max(g_norm, 1e-300);
      for (std::size_t i = 0; i < n; ++i) d[i] = free[i] ? -scale * g[i] : 0.0;
    }

    // Backtracking along the projection arc.
    double step = 1.0;
    double f_new = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * d[i];
      project(x_new);
      double decrease = 0.0;
      for (std::size_t i = 0; i < n; ++i) decrease += g[i] * (x_new[i] - x[i]);
      f_new = objective(x_new, g_new);
      ++res.evaluations;
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * decrease && decrease < 0.0) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!memory.empty()) {
        memory.clear();
        continue;
      }
      // No descent possible at working precision.
      res.converged = true;
      break;
    }

    Pair p{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      p.s[i] = x_new[i] - x[i];
      p.y[i] = g_new[i] - g[i];
    }
    const double sy = dot(p.s, p.y);
    if (sy > 1e-12 * dot(p.y, p.y) && sy > 0.0) {
      p.rho = 1.0 / sy;
      memory.push_back(std::move(p));
      if (static_cast<int>(memory.size()) > opts.history) memory.pop_front();
    }

    const double improvement = f - f_new;
    stalls = (improvement <= opts.stall_tolerance * std::max(std::abs(f), 1e-300)) ? stalls + 1 : 0;
    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
    if (stalls >= opts.stall_iterations) {
      res.converged = true;
      ++it;
      break;
    }
  }
  if (f <= opts.target_value) res.converged = true;
  res.x = std::move(x);
  res.value = f;
  res.iterations = it;
  return res;
}

}  // namespace qdprep
