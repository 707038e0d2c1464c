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

#include <cmath>
#include <numbers>

#include "kernels_internal.hpp"

namespace qdprep::kernels {

namespace {

void sincos_scalar(const double* x, double* s, double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

void tangent_residual_scalar(double omega_b, double omega, double n_z, const double* tau2,
                             double* out, std::size_t n) {
  const double half_window = 0.5 * std::numbers::pi / omega_b;
  for (std::size_t i = 0; i < n; ++i) {
    const double lhs = std::tan(omega * (half_window - tau2[i]));
    const double rhs = std::tan(omega_b * tau2[i]);
    out[i] = lhs + n_z * rhs;
  }
}

void slice_propagators_scalar(double omega_b, double dt, const double* amplitude,
                              SliceMutView out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double u = amplitude[k];
    const double w2 = omega_b * omega_b + 0.5 * u * u;
    const double w = std::sqrt(w2);
    const double theta = w * dt;
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double sn = s / w;
    const double hx = -qdprep::kInvSqrt2 * u;
    const double dsn = 0.5 * u * (c * dt - sn) / w2;
    out.c[k] = c;
    out.x[k] = sn * hx;
    out.z[k] = sn * omega_b;
    out.dc[k] = -s * dt * 0.5 * u / w;
    out.dx[k] = dsn * hx - qdprep::kInvSqrt2 * sn;
    out.dz[k] = dsn * omega_b;
  }
}

void compose_scalar(Su2ConstView a, Su2ConstView b, Su2MutView r, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const Su2Propagator ua{{a.re_I[i], a.im_I[i]}, {a.re_x[i], a.im_x[i]},
                           {a.re_y[i], a.im_y[i]}, {a.re_z[i], a.im_z[i]}};
    const Su2Propagator ub{{b.re_I[i], b.im_I[i]}, {b.re_x[i], b.im_x[i]},
                           {b.re_y[i], b.im_y[i]}, {b.re_z[i], b.im_z[i]}};
    const Su2Propagator p = compose(ua, ub);
    r.re_I[i] = p.uI.real();
    r.im_I[i] = p.uI.imag();
    r.re_x[i] = p.ux.real();
    r.im_x[i] = p.ux.imag();
    r.re_y[i] = p.uy.real();
    r.im_y[i] = p.uy.imag();
    r.re_z[i] = p.uz.real();
    r.im_z[i] = p.uz.imag();
  }
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static constexpr KernelTable table{Isa::Scalar, sincos_scalar, tangent_residual_scalar,
                                     slice_propagators_scalar, compose_scalar};
  return table;
}

}  // namespace qdprep::kernels
