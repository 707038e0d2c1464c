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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "qdprep/error.hpp"
#include "qdprep/model.hpp"
#include "qdprep/propagators.hpp"

using namespace qdprep;
using std::numbers::pi;

namespace {

bool near(cplx a, cplx b, double tol = 1e-14) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_SUITE("model") {

TEST_CASE("system parameters derive the dressed frequency and axis") {
  const SystemParams p(1.0, std::sqrt(6.0));
  CHECK(p.omega() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(p.n_z() == doctest::Approx(0.5));
  CHECK(p.n_x() == doctest::Approx(-std::sqrt(3.0) / 2.0));
  CHECK(p.n_x() * p.n_x() + p.n_z() * p.n_z() == doctest::Approx(1.0));
  CHECK_THROWS_AS(SystemParams(0.0, 1.0), Error);
  CHECK_THROWS_AS(SystemParams(1.0, -1.0), Error);
  CHECK_THROWS_AS(SystemParams(std::nan(""), 1.0), Error);
}

TEST_CASE("hamiltonian with the control off is diagonal") {
  const auto h = three_level_hamiltonian(SystemParams(1.0, 3.0), 0.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const cplx expected = (i == 1 && j == 1) ? cplx(-2.0) : cplx(0.0);
      CHECK(near(h[i][j], expected));
    }
  }
}

TEST_CASE("hamiltonian couples neighbours with -Omega/2") {
  const auto h = three_level_hamiltonian(SystemParams(1.0, 3.0), 2.0);
  CHECK(near(h[0][1], -1.0));
  CHECK(near(h[1][0], -1.0));
  CHECK(near(h[1][2], -1.0));
  CHECK(near(h[2][1], -1.0));
  CHECK(near(h[1][1], -2.0));
  CHECK(near(h[0][2], 0.0));
  CHECK(near(h[0][0], 0.0));
  CHECK(near(h[2][2], 0.0));
}

TEST_CASE("reduction to the bright and dark amplitudes") {
  SUBCASE("ground state") {
    const auto [two, dark] = reduce_to_two_level({1.0, 0.0, 0.0});
    CHECK(near(two.a, kInvSqrt2));
    CHECK(near(two.b, 0.0));
    CHECK(near(dark, -kInvSqrt2));
  }
  SUBCASE("exciton") {
    const auto [two, dark] = reduce_to_two_level({0.0, 1.0, 0.0});
    CHECK(near(two.a, 0.0));
    CHECK(near(two.b, 1.0));
    CHECK(near(dark, 0.0));
  }
  SUBCASE("target state") {
    const auto [two, dark] = reduce_to_two_level({0.0, 0.0, -1.0});
    CHECK(near(two.a, -kInvSqrt2));
    CHECK(near(two.b, 0.0));
    CHECK(near(dark, -kInvSqrt2));
  }
}

TEST_CASE("lifting inverts the reduction") {
  const auto g = lift_from_two_level({kInvSqrt2, 0.0}, -kInvSqrt2);
  CHECK(near(g.c0, 1.0));
  CHECK(near(g.c1, 0.0));
  CHECK(near(g.c2, 0.0));
  const auto t = lift_from_two_level({-kInvSqrt2, 0.0}, -kInvSqrt2);
  CHECK(near(t.c0, 0.0));
  CHECK(near(t.c2, -1.0));

  testing::Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const auto s = gen.state();
    const auto [two, dark] = reduce_to_two_level(s);
    const auto back = lift_from_two_level(two, dark);
    CHECK(near(back.c0, s.c0));
    CHECK(near(back.c1, s.c1));
    CHECK(near(back.c2, s.c2));
    CHECK(two.norm_squared() + std::norm(dark) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(near(dark, s.dark_amplitude()));
  }
}

TEST_CASE("phase condition residual") {
  const SystemParams p(1.0, 3.0);
  SUBCASE("diag(exp(i tau2), exp(-i tau2)) with T + tau2 = pi") {
    for (double tau2 : {0.1, 0.3861, 1.2}) {
      const Su2Propagator u{std::cos(tau2), 0.0, 0.0, cplx(0.0, std::sin(tau2))};
      CHECK(phase_condition_residual(u, pi - tau2, p) < 1e-28);
    }
  }
  SUBCASE("identity at T = pi") {
    CHECK(phase_condition_residual(Su2Propagator::identity(), pi, p) < 1e-28);
  }
  SUBCASE("identity at T = pi/2") {
    CHECK(phase_condition_residual(Su2Propagator::identity(), pi / 2.0, p) ==
          doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("non-unitary input") {
    Su2Propagator u;
    u.uI = 1.1;
    CHECK_THROWS_WITH_AS(phase_condition_residual(u, pi, p), doctest::Contains("NonUnitary"),
                         Error);
  }
}

TEST_CASE("biexciton fidelity is phase insensitive") {
  CHECK(biexciton_fidelity({1.0, 0.0, 0.0}) == 0.0);
  CHECK(biexciton_fidelity({0.0, 0.0, -1.0}) == 1.0);
  for (double th : {0.3, 1.7, 4.0}) {
    CHECK(biexciton_fidelity({0.0, 0.0, std::polar(1.0, th)}) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("pulse sequences") {
  const PulseSequence seq({{2.0, 1.0}, {0.0, 0.5}, {2.0, 0.25}});
  CHECK(seq.total_duration() == 1.75);
  CHECK(seq.amplitude_at(0.0) == 2.0);
  CHECK(seq.amplitude_at(1.0) == 0.0);
  CHECK(seq.amplitude_at(1.5) == 2.0);
  CHECK(seq.amplitude_at(1.75) == 0.0);
  CHECK(seq.amplitude_at(-0.1) == 0.0);
  CHECK_NOTHROW(seq.validate(SystemParams(1.0, 2.0)));
  CHECK_THROWS_AS(seq.validate(SystemParams(1.0, 1.5)), Error);
  CHECK_THROWS_AS(PulseSequence({{1.0, -0.1}}), Error);
}

}  // TEST_SUITE
