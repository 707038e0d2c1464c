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

// Exact propagators of the bright two-level Hamiltonian
//   H = -(Omega/sqrt2) sx + omega_b sz
// for constant-amplitude segments. The global -omega_b I term is not part of
// these propagators; it only enters through phase_condition_residual.

#include "qdprep/model.hpp"
#include "qdprep/su2.hpp"

namespace qdprep {

/// exp(-i H tau) for a constant amplitude; I cos(w tau) - i sin(w tau)(n_x sx + n_z sz).
Su2Propagator constant_propagator(const SystemParams& params, double amplitude, double tau);

/// Segment at the full amplitude omega_max.
Su2Propagator on_propagator(const SystemParams& params, double tau);

/// Free evolution, diag(exp(-i omega_b tau), exp(i omega_b tau)).
Su2Propagator off_propagator(const SystemParams& params, double tau);

/// Ordered product of segment propagators; later segments multiply on the left.
Su2Propagator sequence_propagator(const SystemParams& params, const PulseSequence& seq);

/// Closed-form coefficients of U_on(tau3) U_off(tau2) U_on(tau1). uI is real
/// and ux, uy, uz are purely imaginary for real durations.
Su2Propagator onoffon_coefficients(const SystemParams& params, double tau1, double tau2,
                                   double tau3);

}  // namespace qdprep
