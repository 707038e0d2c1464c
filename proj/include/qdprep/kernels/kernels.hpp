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

// Batched arithmetic kernels. Every kernel has a scalar reference
// implementation; vector variants (AVX2+FMA on x86-64) are selected at
// runtime and must agree with the reference to a few ulps.
//
// Selection order: QDPREP_SIMD environment variable ("scalar" or "avx2"),
// then the best variant the CPU supports.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qdprep/su2.hpp"

namespace qdprep::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Split re/im storage for a batch of Pauli-coefficient operators.
struct Su2Batch {
  std::vector<double> re_I, im_I, re_x, im_x, re_y, im_y, re_z, im_z;

  Su2Batch() = default;
  explicit Su2Batch(std::size_t n) { resize(n); }

  void resize(std::size_t n);
  std::size_t size() const noexcept { return re_I.size(); }
  Su2Propagator get(std::size_t i) const noexcept;
  void set(std::size_t i, const Su2Propagator& u) noexcept;
};

/// Per-slice propagators of a piecewise-constant control and their
/// derivatives with respect to the slice amplitude. Slice k is
///   U_k = c[k] I - i (x[k] sx + z[k] sz)
/// with c real, so the arrays are real.
struct SliceBatch {
  std::vector<double> c, x, z;
  std::vector<double> dc, dx, dz;

  void resize(std::size_t n);
  std::size_t size() const noexcept { return c.size(); }
  Su2Propagator propagator(std::size_t k) const noexcept;
  Su2Propagator derivative(std::size_t k) const noexcept;
};

struct Su2ConstView {
  const double *re_I, *im_I, *re_x, *im_x, *re_y, *im_y, *re_z, *im_z;
};
struct Su2MutView {
  double *re_I, *im_I, *re_x, *im_x, *re_y, *im_y, *re_z, *im_z;
};
struct SliceMutView {
  double *c, *x, *z, *dc, *dx, *dz;
};

/// Function table for one instruction set. Pointers take raw buffers of
/// length n; the span wrappers below do the size checks.
struct KernelTable {
  Isa isa;
  void (*sincos)(const double* x, double* s, double* c, std::size_t n);
  void (*tangent_residual)(double omega_b, double omega, double n_z, const double* tau2,
                           double* out, std::size_t n);
  void (*slice_propagators)(double omega_b, double dt, const double* amplitude,
                            SliceMutView out, std::size_t n);
  void (*compose)(Su2ConstView second, Su2ConstView first, Su2MutView out, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the variant is not compiled in or the CPU lacks support.
const KernelTable* avx2_table() noexcept;

const KernelTable& active() noexcept;
/// Throws InvalidArgument if the requested variant is unavailable.
void select(Isa isa);
std::vector<Isa> available();

void sincos(const KernelTable& k, std::span<const double> x, std::span<double> s,
            std::span<double> c);

/// Signed tan[omega (pi/(2 omega_b) - tau2)] + n_z tan(omega_b tau2).
void tangent_residual(const KernelTable& k, double omega_b, double omega, double n_z,
                      std::span<const double> tau2, std::span<double> out);

void slice_propagators(const KernelTable& k, double omega_b, double dt,
                       std::span<const double> amplitude, SliceBatch& out);

/// out[i] = second[i] * first[i].
void compose(const KernelTable& k, const Su2Batch& second, const Su2Batch& first,
             Su2Batch& out);

namespace detail {
Su2ConstView view(const Su2Batch& b) noexcept;
Su2MutView view(Su2Batch& b) noexcept;
}  // namespace detail

}  // namespace qdprep::kernels
