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

#include "qdprep/model.hpp"

#include <cmath>
#include <fmt/format.h>

#include "qdprep/error.hpp"

namespace qdprep {

SystemParams::SystemParams(double omega_b, double omega_max)
    : omega_b_(omega_b), omega_max_(omega_max) {
  if (!(omega_b > 0.0) || !std::isfinite(omega_b)) {
    raise(ErrorKind::InvalidArgument, fmt::format("omega_b must be positive, got {}", omega_b));
  }
  if (!(omega_max >= 0.0) || !std::isfinite(omega_max)) {
    raise(ErrorKind::InvalidArgument,
          fmt::format("omega_max must be non-negative, got {}", omega_max));
  }
}

double SystemParams::omega_at(double amplitude) const noexcept {
  return std::sqrt(omega_b_ * omega_b_ + 0.5 * amplitude * amplitude);
}

double SystemParams::n_x_at(double amplitude) const noexcept {
  return -kInvSqrt2 * amplitude / omega_at(amplitude);
}

double SystemParams::n_z_at(double amplitude) const noexcept {
  return omega_b_ / omega_at(amplitude);
}

PulseSequence::PulseSequence(std::vector<PulseSegment> segments)
    : segments_(std::move(segments)) {
  for (const auto& s : segments_) {
    if (!(s.duration >= 0.0) || !std::isfinite(s.duration)) {
      raise(ErrorKind::InvalidArgument,
            fmt::format("segment duration must be non-negative, got {}", s.duration));
    }
    if (!(s.amplitude >= 0.0) || !std::isfinite(s.amplitude)) {
      raise(ErrorKind::InvalidArgument,
            fmt::format("segment amplitude must be non-negative, got {}", s.amplitude));
    }
  }
}

double PulseSequence::total_duration() const noexcept {
  double total = 0.0;
  for (const auto& s : segments_) total += s.duration;
  return total;
}

double PulseSequence::amplitude_at(double t) const noexcept {
  if (t < 0.0) return 0.0;
  double start = 0.0;
  for (const auto& s : segments_) {
    const double end = start + s.duration;
    if (t < end) return s.amplitude;
    start = end;
  }
  return 0.0;
}

void PulseSequence::validate(const SystemParams& params) const {
  for (const auto& s : segments_) {
    if (s.amplitude > params.omega_max() * (1.0 + 1e-12)) {
      raise(ErrorKind::InvalidArgument,
            fmt::format("segment amplitude {} exceeds omega_max {}", s.amplitude,
                        params.omega_max()));
    }
  }
}

Matrix3 three_level_hamiltonian(const SystemParams& params, double rabi) {
  const cplx off{-0.5 * rabi};
  Matrix3 h{};
  h[0][1] = h[1][0] = off;
  h[1][2] = h[2][1] = off;
  h[1][1] = -2.0 * params.omega_b();
  return h;
}

std::pair<TwoLevelState, cplx> reduce_to_two_level(const ThreeLevelState& s) noexcept {
  constexpr double r = kInvSqrt2;
  return {TwoLevelState{(s.c2 + s.c0) * r, s.c1}, (s.c2 - s.c0) * r};
}

ThreeLevelState lift_from_two_level(const TwoLevelState& two, cplx dark) noexcept {
  constexpr double r = kInvSqrt2;
  return {(two.a - dark) * r, two.b, (two.a + dark) * r};
}

double phase_condition_residual(const Su2Propagator& u, double total_time,
                                const SystemParams& params) {
  const double defect = u.unitarity_defect();
  if (defect > 1e-9) {
    raise(ErrorKind::NonUnitary, fmt::format("propagator deviates from unitarity by {:.3e}", defect));
  }
  const Matrix2 m = u.matrix();
  const cplx global = std::polar(1.0, params.omega_b() * total_time);
  return std::norm(global * m[0][0] + 1.0) + std::norm(m[0][1]);
}

}  // namespace qdprep
