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

#include "qdprep/su2.hpp"

#include <algorithm>
#include <cmath>

namespace qdprep {

namespace {
constexpr cplx kI{0.0, 1.0};
}

Su2Propagator Su2Propagator::from_matrix(const Matrix2& m) noexcept {
  Su2Propagator u;
  u.uI = 0.5 * (m[0][0] + m[1][1]);
  u.uz = 0.5 * (m[0][0] - m[1][1]);
  u.ux = 0.5 * (m[0][1] + m[1][0]);
  u.uy = 0.5 * kI * (m[0][1] - m[1][0]);
  return u;
}

Matrix2 Su2Propagator::matrix() const noexcept {
  return {{{uI + uz, ux - kI * uy}, {ux + kI * uy, uI - uz}}};
}

double Su2Propagator::unitarity_defect() const noexcept {
  const Matrix2 m = matrix();
  double defect = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      cplx acc = std::conj(m[0][r]) * m[0][c] + std::conj(m[1][r]) * m[1][c];
      if (r == c) acc -= 1.0;
      defect = std::max(defect, std::abs(acc));
    }
  }
  return defect;
}

Su2Propagator compose(const Su2Propagator& a, const Su2Propagator& b) noexcept {
  // (a0 + a.s)(b0 + b.s) = (a0 b0 + a.b) + (a0 b + b0 a + i a x b).s
  Su2Propagator r;
  r.uI = a.uI * b.uI + a.ux * b.ux + a.uy * b.uy + a.uz * b.uz;
  r.ux = a.uI * b.ux + b.uI * a.ux + kI * (a.uy * b.uz - a.uz * b.uy);
  r.uy = a.uI * b.uy + b.uI * a.uy + kI * (a.uz * b.ux - a.ux * b.uz);
  r.uz = a.uI * b.uz + b.uI * a.uz + kI * (a.ux * b.uy - a.uy * b.ux);
  return r;
}

}  // namespace qdprep
