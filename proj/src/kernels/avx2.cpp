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

// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and must only be entered after a runtime CPU check.

#include <immintrin.h>

#include <array>
#include <cmath>
#include <numbers>

#include "kernels_internal.hpp"

namespace qdprep::kernels::detail {

namespace {

constexpr std::size_t kLanes = 4;

// Cody-Waite split of pi/4 and minimax coefficients from Cephes sin.c.
constexpr double kDP1 = 7.85398125648498535156e-1;
constexpr double kDP2 = 3.77489470793079817668e-8;
constexpr double kDP3 = 2.69515142907905952645e-15;
constexpr double kFourOverPi = 1.27323954473516268615;
constexpr double kReductionLimit = 1.0e8;

constexpr std::array<double, 6> kSinCoef{
    1.58962301576546568060e-10, -2.50507477628578072866e-8, 2.75573136213857245213e-6,
    -1.98412698295895385996e-4, 8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr std::array<double, 6> kCosCoef{
    -1.13585365213876817300e-11, 2.08757008419747316778e-9,  -2.75573141792967388112e-7,
    2.48015872888517045348e-5,   -1.38888888888730564116e-3, 4.16666666666665929218e-2};

inline __m256d horner(__m256d x, const std::array<double, 6>& coef) {
  __m256d acc = _mm256_set1_pd(coef[0]);
  for (std::size_t i = 1; i < coef.size(); ++i) {
    acc = _mm256_fmadd_pd(acc, x, _mm256_set1_pd(coef[i]));
  }
  return acc;
}

// Lanes with |x| > kReductionLimit or non-finite x are not handled here;
// callers test in_range() first.
inline void sincos4(__m256d x, __m256d& s, __m256d& c) {
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  const __m256d sign_in = _mm256_and_pd(x, sign_bit);
  const __m256d ax = _mm256_andnot_pd(sign_bit, x);

  __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, _mm256_set1_pd(kFourOverPi)));
  __m128i j = _mm256_cvttpd_epi32(y);
  const __m128i odd = _mm_and_si128(j, _mm_set1_epi32(1));
  j = _mm_add_epi32(j, odd);
  y = _mm256_add_pd(y, _mm256_cvtepi32_pd(odd));

  __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP1), ax);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP2), z);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP3), z);
  const __m256d zz = _mm256_mul_pd(z, z);

  const __m256d poly_s = _mm256_fmadd_pd(_mm256_mul_pd(z, zz), horner(zz, kSinCoef), z);
  const __m256d poly_c =
      _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), horner(zz, kCosCoef),
                      _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0)));

  const __m256d zero = _mm256_setzero_pd();
  const __m256d bit1 = _mm256_cmp_pd(
      _mm256_cvtepi32_pd(_mm_and_si128(j, _mm_set1_epi32(2))), zero, _CMP_NEQ_OQ);
  const __m256d bit2 = _mm256_cmp_pd(
      _mm256_cvtepi32_pd(_mm_and_si128(j, _mm_set1_epi32(4))), zero, _CMP_NEQ_OQ);

  s = _mm256_blendv_pd(poly_s, poly_c, bit1);
  c = _mm256_blendv_pd(poly_c, poly_s, bit1);
  s = _mm256_xor_pd(s, _mm256_xor_pd(sign_in, _mm256_and_pd(bit2, sign_bit)));
  c = _mm256_xor_pd(c, _mm256_and_pd(_mm256_xor_pd(bit1, bit2), sign_bit));
}

inline bool in_range(__m256d x) {
  const __m256d ax = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
  const __m256d ok = _mm256_cmp_pd(ax, _mm256_set1_pd(kReductionLimit), _CMP_LE_OQ);
  return _mm256_movemask_pd(ok) == 0xF;
}

inline void sincos4_checked(__m256d x, __m256d& s, __m256d& c) {
  if (in_range(x)) {
    sincos4(x, s, c);
    return;
  }
  alignas(32) double xs[kLanes], ss[kLanes], cs[kLanes];
  _mm256_store_pd(xs, x);
  for (std::size_t l = 0; l < kLanes; ++l) {
    ss[l] = std::sin(xs[l]);
    cs[l] = std::cos(xs[l]);
  }
  s = _mm256_load_pd(ss);
  c = _mm256_load_pd(cs);
}

// Runs `body(offset, count)` on full blocks of kLanes, then once on a padded
// copy of the tail so every element goes through the vector path.
template <std::size_t NIn, std::size_t NOut, typename Body>
void for_blocks(std::size_t n, const std::array<const double*, NIn>& in,
                const std::array<double*, NOut>& out, double pad, Body body) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    std::array<const double*, NIn> bi;
    std::array<double*, NOut> bo;
    for (std::size_t a = 0; a < NIn; ++a) bi[a] = in[a] + i;
    for (std::size_t a = 0; a < NOut; ++a) bo[a] = out[a] + i;
    body(bi, bo);
  }
  if (i == n) return;
  const std::size_t rem = n - i;
  alignas(32) double tin[NIn][kLanes];
  alignas(32) double tout[NOut][kLanes];
  std::array<const double*, NIn> bi;
  std::array<double*, NOut> bo;
  for (std::size_t a = 0; a < NIn; ++a) {
    for (std::size_t l = 0; l < kLanes; ++l) tin[a][l] = l < rem ? in[a][i + l] : pad;
    bi[a] = tin[a];
  }
  for (std::size_t a = 0; a < NOut; ++a) bo[a] = tout[a];
  body(bi, bo);
  for (std::size_t a = 0; a < NOut; ++a) {
    for (std::size_t l = 0; l < rem; ++l) out[a][i + l] = tout[a][l];
  }
}

void sincos_avx2(const double* x, double* s, double* c, std::size_t n) {
  for_blocks<1, 2>(n, {x}, {s, c}, 0.0, [](const auto& in, const auto& out) {
    __m256d vs, vc;
    sincos4_checked(_mm256_loadu_pd(in[0]), vs, vc);
    _mm256_storeu_pd(out[0], vs);
    _mm256_storeu_pd(out[1], vc);
  });
}

void tangent_residual_avx2(double omega_b, double omega, double n_z, const double* tau2,
                           double* out, std::size_t n) {
  const __m256d half_window = _mm256_set1_pd(0.5 * std::numbers::pi / omega_b);
  const __m256d vw = _mm256_set1_pd(omega);
  const __m256d vwb = _mm256_set1_pd(omega_b);
  const __m256d vnz = _mm256_set1_pd(n_z);
  for_blocks<1, 1>(n, {tau2}, {out}, 0.0, [&](const auto& in, const auto& o) {
    const __m256d t = _mm256_loadu_pd(in[0]);
    __m256d s1, c1, s2, c2;
    sincos4_checked(_mm256_mul_pd(vw, _mm256_sub_pd(half_window, t)), s1, c1);
    sincos4_checked(_mm256_mul_pd(vwb, t), s2, c2);
    const __m256d lhs = _mm256_div_pd(s1, c1);
    const __m256d rhs = _mm256_div_pd(s2, c2);
    _mm256_storeu_pd(o[0], _mm256_fmadd_pd(vnz, rhs, lhs));
  });
}

void slice_propagators_avx2(double omega_b, double dt, const double* amplitude,
                            SliceMutView out, std::size_t n) {
  const __m256d vwb2 = _mm256_set1_pd(omega_b * omega_b);
  const __m256d vwb = _mm256_set1_pd(omega_b);
  const __m256d vdt = _mm256_set1_pd(dt);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d neg_r2 = _mm256_set1_pd(-qdprep::kInvSqrt2);
  for_blocks<1, 6>(
      n, {amplitude}, {out.c, out.x, out.z, out.dc, out.dx, out.dz}, 0.0,
      [&](const auto& in, const auto& o) {
        const __m256d u = _mm256_loadu_pd(in[0]);
        const __m256d w2 = _mm256_fmadd_pd(_mm256_mul_pd(half, u), u, vwb2);
        const __m256d w = _mm256_sqrt_pd(w2);
        __m256d s, c;
        sincos4_checked(_mm256_mul_pd(w, vdt), s, c);
        const __m256d sn = _mm256_div_pd(s, w);
        const __m256d hx = _mm256_mul_pd(neg_r2, u);
        const __m256d half_u = _mm256_mul_pd(half, u);
        const __m256d dsn =
            _mm256_div_pd(_mm256_mul_pd(half_u, _mm256_fmsub_pd(c, vdt, sn)), w2);
        _mm256_storeu_pd(o[0], c);
        _mm256_storeu_pd(o[1], _mm256_mul_pd(sn, hx));
        _mm256_storeu_pd(o[2], _mm256_mul_pd(sn, vwb));
        _mm256_storeu_pd(o[3],
                         _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(s, vdt), half_u),
                                       _mm256_sub_pd(_mm256_setzero_pd(), w)));
        _mm256_storeu_pd(o[4], _mm256_fmadd_pd(dsn, hx, _mm256_mul_pd(neg_r2, sn)));
        _mm256_storeu_pd(o[5], _mm256_mul_pd(dsn, vwb));
      });
}

struct VCplx {
  __m256d re, im;
};

inline VCplx mul(VCplx a, VCplx b) {
  return {_mm256_fmsub_pd(a.re, b.re, _mm256_mul_pd(a.im, b.im)),
          _mm256_fmadd_pd(a.re, b.im, _mm256_mul_pd(a.im, b.re))};
}
inline VCplx add(VCplx a, VCplx b) {
  return {_mm256_add_pd(a.re, b.re), _mm256_add_pd(a.im, b.im)};
}
inline VCplx sub(VCplx a, VCplx b) {
  return {_mm256_sub_pd(a.re, b.re), _mm256_sub_pd(a.im, b.im)};
}
// i * a
inline VCplx times_i(VCplx a) { return {_mm256_sub_pd(_mm256_setzero_pd(), a.im), a.re}; }

void compose_avx2(Su2ConstView a, Su2ConstView b, Su2MutView r, std::size_t n) {
  for_blocks<16, 8>(
      n,
      {a.re_I, a.im_I, a.re_x, a.im_x, a.re_y, a.im_y, a.re_z, a.im_z, b.re_I, b.im_I, b.re_x,
       b.im_x, b.re_y, b.im_y, b.re_z, b.im_z},
      {r.re_I, r.im_I, r.re_x, r.im_x, r.re_y, r.im_y, r.re_z, r.im_z}, 0.0,
      [](const auto& in, const auto& o) {
        auto ld = [&](std::size_t k) {
          return VCplx{_mm256_loadu_pd(in[k]), _mm256_loadu_pd(in[k + 1])};
        };
        const VCplx a0 = ld(0), ax = ld(2), ay = ld(4), az = ld(6);
        const VCplx b0 = ld(8), bx = ld(10), by = ld(12), bz = ld(14);
        const VCplx rI = add(add(mul(a0, b0), mul(ax, bx)), add(mul(ay, by), mul(az, bz)));
        const VCplx rx =
            add(add(mul(a0, bx), mul(b0, ax)), times_i(sub(mul(ay, bz), mul(az, by))));
        const VCplx ry =
            add(add(mul(a0, by), mul(b0, ay)), times_i(sub(mul(az, bx), mul(ax, bz))));
        const VCplx rz =
            add(add(mul(a0, bz), mul(b0, az)), times_i(sub(mul(ax, by), mul(ay, bx))));
        const VCplx res[4] = {rI, rx, ry, rz};
        for (std::size_t k = 0; k < 4; ++k) {
          _mm256_storeu_pd(o[2 * k], res[k].re);
          _mm256_storeu_pd(o[2 * k + 1], res[k].im);
        }
      });
}

}  // namespace

const KernelTable& avx2_table_unchecked() noexcept {
  static constexpr KernelTable table{Isa::Avx2, sincos_avx2, tangent_residual_avx2,
                                     slice_propagators_avx2, compose_avx2};
  return table;
}

}  // namespace qdprep::kernels::detail
