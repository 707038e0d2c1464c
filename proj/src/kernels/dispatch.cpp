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

#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"
#include "qdprep/error.hpp"

namespace qdprep::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

void Su2Batch::resize(std::size_t n) {
  for (auto* v : {&re_I, &im_I, &re_x, &im_x, &re_y, &im_y, &re_z, &im_z}) v->resize(n);
}

Su2Propagator Su2Batch::get(std::size_t i) const noexcept {
  return {{re_I[i], im_I[i]}, {re_x[i], im_x[i]}, {re_y[i], im_y[i]}, {re_z[i], im_z[i]}};
}

void Su2Batch::set(std::size_t i, const Su2Propagator& u) noexcept {
  re_I[i] = u.uI.real();
  im_I[i] = u.uI.imag();
  re_x[i] = u.ux.real();
  im_x[i] = u.ux.imag();
  re_y[i] = u.uy.real();
  im_y[i] = u.uy.imag();
  re_z[i] = u.uz.real();
  im_z[i] = u.uz.imag();
}

void SliceBatch::resize(std::size_t n) {
  for (auto* v : {&c, &x, &z, &dc, &dx, &dz}) v->resize(n);
}

Su2Propagator SliceBatch::propagator(std::size_t k) const noexcept {
  return {{c[k], 0.0}, {0.0, -x[k]}, {}, {0.0, -z[k]}};
}

Su2Propagator SliceBatch::derivative(std::size_t k) const noexcept {
  return {{dc[k], 0.0}, {0.0, -dx[k]}, {}, {0.0, -dz[k]}};
}

namespace detail {
Su2ConstView view(const Su2Batch& b) noexcept {
  return {b.re_I.data(), b.im_I.data(), b.re_x.data(), b.im_x.data(),
          b.re_y.data(), b.im_y.data(), b.re_z.data(), b.im_z.data()};
}
Su2MutView view(Su2Batch& b) noexcept {
  return {b.re_I.data(), b.im_I.data(), b.re_x.data(), b.im_x.data(),
          b.re_y.data(), b.im_y.data(), b.re_z.data(), b.im_z.data()};
}
}  // namespace detail

const KernelTable* avx2_table() noexcept {
#if defined(QDPREP_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &detail::avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* initial_table() {
  if (const char* env = std::getenv("QDPREP_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2" && avx2_table() != nullptr) return avx2_table();
  }
  if (const auto* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

void require(bool ok, const char* what) {
  if (!ok) raise(ErrorKind::InvalidArgument, what);
}

}  // namespace

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      current().store(&scalar_table(), std::memory_order_release);
      return;
    case Isa::Avx2:
      require(avx2_table() != nullptr, "AVX2 kernels are not available on this machine");
      current().store(avx2_table(), std::memory_order_release);
      return;
  }
}

std::vector<Isa> available() {
  std::vector<Isa> out{Isa::Scalar};
  if (avx2_table() != nullptr) out.push_back(Isa::Avx2);
  return out;
}

void sincos(const KernelTable& k, std::span<const double> x, std::span<double> s,
            std::span<double> c) {
  require(s.size() == x.size() && c.size() == x.size(), "sincos: size mismatch");
  k.sincos(x.data(), s.data(), c.data(), x.size());
}

void tangent_residual(const KernelTable& k, double omega_b, double omega, double n_z,
                      std::span<const double> tau2, std::span<double> out) {
  require(out.size() == tau2.size(), "tangent_residual: size mismatch");
  k.tangent_residual(omega_b, omega, n_z, tau2.data(), out.data(), tau2.size());
}

void slice_propagators(const KernelTable& k, double omega_b, double dt,
                       std::span<const double> amplitude, SliceBatch& out) {
  out.resize(amplitude.size());
  k.slice_propagators(omega_b, dt, amplitude.data(),
                      {out.c.data(), out.x.data(), out.z.data(), out.dc.data(), out.dx.data(),
                       out.dz.data()},
                      amplitude.size());
}

void compose(const KernelTable& k, const Su2Batch& second, const Su2Batch& first,
             Su2Batch& out) {
  require(second.size() == first.size(), "compose: size mismatch");
  out.resize(first.size());
  k.compose(detail::view(second), detail::view(first), detail::view(out), first.size());
}

}  // namespace qdprep::kernels
