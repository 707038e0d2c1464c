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

#include <array>
#include <complex>

namespace qdprep {

using cplx = std::complex<double>;

inline constexpr double kInvSqrt2 = 0.707106781186547524400844362104849039;
using Matrix2 = std::array<std::array<cplx, 2>, 2>;

/// A 2x2 operator written as uI*I + ux*sx + uy*sy + uz*sz.
///
/// All propagator algebra in the library happens on these four coefficients;
/// matrix() reconstructs [[uI+uz, ux-i*uy], [ux+i*uy, uI-uz]] on demand.
struct Su2Propagator {
  cplx uI{1.0};
  cplx ux{};
  cplx uy{};
  cplx uz{};

  static Su2Propagator identity() noexcept { return {}; }
  static Su2Propagator from_matrix(const Matrix2& m) noexcept;

  Matrix2 matrix() const noexcept;
  cplx determinant() const noexcept { return uI * uI - ux * ux - uy * uy - uz * uz; }

  /// Max-abs entry of U^dagger U - I.
  double unitarity_defect() const noexcept;
  bool is_unitary(double tol = 1e-12) const noexcept { return unitarity_defect() <= tol; }
};

/// Product second*first via s_a s_b = delta_ab I + i eps_abc s_c.
/// Time ordering: `first` acts earlier.
Su2Propagator compose(const Su2Propagator& second, const Su2Propagator& first) noexcept;

inline Su2Propagator operator*(const Su2Propagator& a, const Su2Propagator& b) noexcept {
  return compose(a, b);
}

}  // namespace qdprep
