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

#include "qdprep/propagators.hpp"

#include <cmath>
#include <fmt/format.h>

#include "qdprep/error.hpp"

namespace qdprep {

namespace {

void check_duration(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    raise(ErrorKind::InvalidArgument, fmt::format("duration must be non-negative, got {}", tau));
  }
}

}  // namespace

Su2Propagator constant_propagator(const SystemParams& params, double amplitude, double tau) {
  check_duration(tau);
  const double w = params.omega_at(amplitude);
  const double s = std::sin(w * tau);
  Su2Propagator u;
  u.uI = std::cos(w * tau);
  u.ux = {0.0, -s * params.n_x_at(amplitude)};
  u.uz = {0.0, -s * params.n_z_at(amplitude)};
  return u;
}

Su2Propagator on_propagator(const SystemParams& params, double tau) {
  return constant_propagator(params, params.omega_max(), tau);
}

Su2Propagator off_propagator(const SystemParams& params, double tau) {
  check_duration(tau);
  const double phase = params.omega_b() * tau;
  Su2Propagator u;
  u.uI = std::cos(phase);
  u.uz = {0.0, -std::sin(phase)};
  return u;
}

Su2Propagator sequence_propagator(const SystemParams& params, const PulseSequence& seq) {
  Su2Propagator total = Su2Propagator::identity();
  for (const auto& seg : seq.segments()) {
    total = compose(constant_propagator(params, seg.amplitude, seg.duration), total);
  }
  return total;
}

Su2Propagator onoffon_coefficients(const SystemParams& params, double tau1, double tau2,
                                   double tau3) {
  check_duration(tau1);
  check_duration(tau2);
  check_duration(tau3);
  const double w = params.omega();
  const double nx = params.n_x();
  const double nz = params.n_z();
  const double c2 = std::cos(params.omega_b() * tau2);
  const double s2 = std::sin(params.omega_b() * tau2);
  const double s_sum = std::sin(w * (tau1 + tau3));
  const double c_sum = std::cos(w * (tau1 + tau3));
  const double s_diff = std::sin(w * (tau3 - tau1));
  const double c_diff = std::cos(w * (tau3 - tau1));
  const double triple = std::sin(w * tau1) * s2 * std::sin(w * tau3);

  Su2Propagator u;
  u.uI = c2 * c_sum - nz * s2 * s_sum;
  u.ux = {0.0, -nx * c2 * s_sum + 2.0 * nx * nz * triple};
  u.uy = {0.0, nx * s2 * s_diff};
  u.uz = {0.0, -nz * c2 * s_sum - s2 * c_diff + 2.0 * nz * nz * triple};
  return u;
}

}  // namespace qdprep
