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
#include <sstream>
#include <string>

#include "generators.hpp"
#include "qdprep/design.hpp"
#include "qdprep/dynamics.hpp"
#include "qdprep/error.hpp"
#include "qdprep/propagators.hpp"

using namespace qdprep;
using std::numbers::pi;

namespace {

const double kSechAmp = 4.0 * std::sqrt(2.0 / 3.0);

ControlEnvelope onoffon_envelope(const SystemParams& p, SignVariant v = SignVariant::Lower) {
  return PiecewiseEnvelope{design_on_off_on(p).variant(v).sequence(p), 0.0};
}

// Exact final bright amplitudes exp(i wb T) U (a, b).
TwoLevelState exact_two_level(const SystemParams& p, const PulseSequence& seq,
                              const TwoLevelState& in) {
  const auto m = sequence_propagator(p, seq).matrix();
  const cplx g = std::polar(1.0, p.omega_b() * seq.total_duration());
  return {g * (m[0][0] * in.a + m[0][1] * in.b), g * (m[1][0] * in.a + m[1][1] * in.b)};
}

double distance(const ThreeLevelState& x, const ThreeLevelState& y) {
  return std::sqrt(std::norm(x.c0 - y.c0) + std::norm(x.c1 - y.c1) + std::norm(x.c2 - y.c2));
}

double final_s22(const SystemParams& p, const RateParams& r) {
  const auto d = design_on_off_on(p).lower;
  const auto traj = propagate_density(p, r, onoffon_envelope(p), {0.0, d.total_T},
                                      DensityState{}, 1e-3);
  return traj.back().state.s22;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("envelope evaluation and switch times") {
  const ControlEnvelope c = ConstantEnvelope{2.0};
  CHECK(c.evaluate(5.0) == 2.0);
  CHECK(c.switch_times(0.0, 1.0).empty());
  CHECK(c.is_piecewise_constant());

  const ControlEnvelope s = SechEnvelope{3.0, 0.5, 1.0};
  CHECK(s.evaluate(1.0) == doctest::Approx(3.0));
  CHECK(s.evaluate(1.5) == doctest::Approx(3.0 / std::cosh(1.0)));
  CHECK(!s.is_piecewise_constant());

  const ControlEnvelope w = PiecewiseEnvelope{PulseSequence({{2.0, 1.0}, {0.0, 0.5}}), 1.0};
  CHECK(w.evaluate(0.5) == 0.0);
  CHECK(w.evaluate(1.2) == 2.0);
  CHECK(w.evaluate(2.2) == 0.0);
  const auto sw = w.switch_times(0.0, 3.0);
  REQUIRE(sw.size() == 3);
  CHECK(sw[0] == 1.0);
  CHECK(sw[1] == 2.0);
  CHECK(sw[2] == 2.5);
  CHECK(w.shortest_segment().value() == 0.5);

  const ControlEnvelope z = SampledEnvelope{{{0.0, 1.0}, {1.0, 2.0}, {2.0, 0.0}}};
  CHECK(z.evaluate(0.5) == 1.0);
  CHECK(z.evaluate(1.5) == 2.0);
  CHECK(z.evaluate(-1.0) == 0.0);
  CHECK(z.evaluate(3.0) == 0.0);
}

TEST_CASE("default step") {
  const SystemParams p(1.0, 10.0);
  CHECK(default_step(p, ConstantEnvelope{1.0}) == doctest::Approx(1e-3));
  const ControlEnvelope short_pulse = PiecewiseEnvelope{PulseSequence({{1.0, 0.01}}), 0.0};
  CHECK(default_step(p, short_pulse) == doctest::Approx(2e-4));
}

TEST_CASE("free evolution") {
  const SystemParams p(1.0, 1.0);
  const ThreeLevelState s{0.6, cplx(0.0, 0.8), 0.0};
  const double T = 1.3;
  const auto traj = propagate_three_level(p, ConstantEnvelope{0.0}, {0.0, T}, s, 1e-3);
  const auto& f = traj.back().state;
  CHECK(std::abs(f.c0 - s.c0) < 1e-14);
  CHECK(std::abs(f.c2 - s.c2) < 1e-14);
  CHECK(std::abs(f.c1 - s.c1 * std::polar(1.0, 2.0 * T)) < 1e-12);
  CHECK(traj.back().t == T);
}

TEST_CASE("constant pulse prepares the biexciton") {
  const SystemParams p(1.0, std::sqrt(6.0));
  const auto traj =
      propagate_three_level(p, ConstantEnvelope{std::sqrt(6.0)}, {0.0, pi}, {}, 1e-3);
  CHECK(biexciton_fidelity(traj.back().state) >= 1.0 - 1e-6);
}

TEST_CASE("sech pulse prepares the biexciton") {
  const auto d = design_sech(SystemParams(1.0, 0.0), 2);
  const SystemParams p(1.0, d.omega0);
  const double t0 = d.truncation_halfwidth;
  const auto traj =
      propagate_three_level(p, SechEnvelope{d.omega0, d.t_p, 0.0}, {-t0, t0}, {}, 1e-3);
  CHECK(biexciton_fidelity(traj.back().state) >= 1.0 - 1e-4);
}

TEST_CASE("on-off-on designs simulate to full transfer") {
  for (double amp : {kSechAmp, 5.0, 10.0, 50.0}) {
    const SystemParams p(1.0, amp);
    const auto sol = design_on_off_on(p);
    for (SignVariant v : {SignVariant::Lower, SignVariant::Upper}) {
      const auto& d = sol.variant(v);
      const ControlEnvelope env = PiecewiseEnvelope{d.sequence(p), 0.0};
      const auto traj = propagate_three_level(p, env, {0.0, d.total_T}, {}, default_step(p, env));
      CHECK(biexciton_fidelity(traj.back().state) >= 1.0 - 1e-6);
    }
  }
}

TEST_CASE("norm and dark amplitude are conserved for random envelopes") {
  testing::Gen gen(101);
  for (int i = 0; i < 5; ++i) {
    const double omax = gen.uniform(1.0, 15.0);
    const SystemParams p(1.0, omax);
    const auto env = gen.envelope(omax, 3.0);
    const auto s0 = gen.state();
    const auto traj = propagate_three_level(p, env, {0.0, 3.0}, s0, 1e-3);
    const cplx dark = s0.dark_amplitude();
    double worst_dark = 0.0, worst_norm = 0.0;
    for (const auto& pt : traj) {
      worst_dark = std::max(worst_dark, std::abs(pt.state.dark_amplitude() - dark));
      worst_norm = std::max(worst_norm, std::abs(pt.state.norm_squared() - 1.0));
    }
    CHECK(worst_dark < 1e-8);
    CHECK(worst_norm < 1e-8);
  }
}

TEST_CASE("two-level propagation lifts to the three-level trajectory") {
  testing::Gen gen(202);
  for (int i = 0; i < 5; ++i) {
    const double omax = gen.uniform(1.0, 15.0);
    const SystemParams p(1.0, omax);
    const auto env = gen.envelope(omax, 2.0);
    const auto s0 = gen.state();
    const auto [two0, dark] = reduce_to_two_level(s0);
    const auto three = propagate_three_level(p, env, {0.0, 2.0}, s0, 2e-3);
    const auto two = propagate_two_level(p, env, {0.0, 2.0}, two0, 2e-3);
    REQUIRE(three.size() == two.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < three.size(); ++k) {
      worst = std::max(worst, distance(lift_from_two_level(two[k].state, dark), three[k].state));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("RK4 agrees with the analytic sequence propagator") {
  testing::Gen gen(303);
  for (int i = 0; i < 20; ++i) {
    const double omax = gen.uniform(2.5, 20.0);
    const SystemParams p(1.0, omax);
    std::vector<PulseSegment> segs;
    for (int k = gen.integer(1, 6); k > 0; --k) {
      segs.push_back({gen.uniform(0.0, omax), gen.uniform(0.05, 0.8)});
    }
    const PulseSequence seq(segs);
    const TwoLevelState in{kInvSqrt2, 0.0};
    const auto traj = propagate_two_level(p, PiecewiseEnvelope{seq, 0.0},
                                          {0.0, seq.total_duration()}, in, 1e-3);
    const auto exact = exact_two_level(p, seq, in);
    CHECK(std::abs(traj.back().state.a - exact.a) < 1e-8);
    CHECK(std::abs(traj.back().state.b - exact.b) < 1e-8);
  }
}

TEST_CASE("on-off-on bright amplitude ends at -1/sqrt(2)") {
  const SystemParams p(1.0, kSechAmp);
  const auto seq = design_on_off_on(p).lower.sequence(p);
  const auto exact = exact_two_level(p, seq, {kInvSqrt2, 0.0});
  CHECK(std::abs(exact.a + kInvSqrt2) < 1e-12);
  const auto traj = propagate_two_level(p, PiecewiseEnvelope{seq, 0.0},
                                        {0.0, seq.total_duration()}, {kInvSqrt2, 0.0}, 1e-3);
  CHECK(std::abs(traj.back().state.a + kInvSqrt2) < 1e-8);
}

TEST_CASE("RK4 converges at fourth order") {
  const double amp = 3.7;
  const SystemParams p(1.0, amp);
  const PulseSequence seq({{amp, 2.3}});
  const TwoLevelState in{kInvSqrt2, 0.0};
  const auto exact = exact_two_level(p, seq, in);
  auto err = [&](double dt) {
    const auto s = propagate_two_level(p, ConstantEnvelope{amp}, {0.0, 2.3}, in, dt).back().state;
    return std::sqrt(std::norm(s.a - exact.a) + std::norm(s.b - exact.b));
  };
  const double ratio = err(0.02) / err(0.01);
  CAPTURE(ratio);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("step that is too large is reported") {
  const SystemParams p(1.0, 50.0);
  try {
    propagate_three_level(p, ConstantEnvelope{50.0}, {0.0, 10.0}, {}, 0.5);
    FAIL("expected StepTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepTooLarge);
    CHECK(e.is_numerical());
  }
  CHECK_THROWS_AS(propagate_three_level(p, ConstantEnvelope{1.0}, {0.0, 1.0}, {}, 0.0), Error);
  CHECK_THROWS_AS(propagate_three_level(p, ConstantEnvelope{1.0}, {1.0, 0.0}, {}, 0.1), Error);
}

TEST_CASE("density matrix from a pure state") {
  const ThreeLevelState s{0.6, cplx(0.0, 0.8), 0.0};
  const auto d = DensityState::from_pure(s);
  CHECK(d.s00 == doctest::Approx(0.36));
  CHECK(d.s11 == doctest::Approx(0.64));
  CHECK(d.trace() == doctest::Approx(1.0));
  CHECK(std::abs(d.s01 - cplx(0.0, -0.48)) < 1e-15);
}

TEST_CASE("zero rates reproduce the unitary populations") {
  testing::Gen gen(404);
  for (int i = 0; i < 5; ++i) {
    const double omax = gen.uniform(1.0, 12.0);
    const SystemParams p(1.0, omax);
    const auto env = gen.envelope(omax, 3.0);
    const auto u = propagate_three_level(p, env, {0.0, 3.0}, {}, 1e-3);
    const auto r = propagate_density(p, RateParams{}, env, {0.0, 3.0}, DensityState{}, 1e-3);
    REQUIRE(u.size() == r.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const auto pure = DensityState::from_pure(u[k].state);
      const auto& d = r[k].state;
      worst = std::max({worst, std::abs(pure.s00 - d.s00), std::abs(pure.s11 - d.s11),
                        std::abs(pure.s22 - d.s22), std::abs(pure.s01 - d.s01),
                        std::abs(pure.s02 - d.s02), std::abs(pure.s12 - d.s12)});
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("trace and populations stay physical under damping") {
  testing::Gen gen(505);
  for (int i = 0; i < 5; ++i) {
    const double omax = gen.uniform(1.0, 12.0);
    const SystemParams p(1.0, omax);
    const auto env = gen.envelope(omax, 3.0);
    const RateParams r{gen.uniform(0.0, 0.3), gen.uniform(0.0, 0.3), gen.uniform(0.0, 0.3),
                       gen.uniform(0.0, 0.3), gen.uniform(0.0, 0.3)};
    const auto traj = propagate_density(p, r, env, {0.0, 3.0}, DensityState{}, 1e-3);
    for (const auto& pt : traj) {
      CHECK(std::abs(pt.state.trace() - 1.0) < 1e-12);
      CHECK(std::min({pt.state.s00, pt.state.s11, pt.state.s22}) > -1e-12);
    }
  }
}

TEST_CASE("decay cascades from the biexciton") {
  const SystemParams p(1.0, 1.0);
  const RateParams r{0.0, 0.5, 0.0, 0.0, 0.0};
  const auto d0 = DensityState::from_pure({0.0, 0.0, 1.0});
  const auto traj = propagate_density(p, r, ConstantEnvelope{0.0}, {0.0, 2.0}, d0, 1e-3);
  CHECK(traj.back().state.s22 == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
  CHECK(traj.back().state.s11 == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
}

TEST_CASE("unstable damping is reported") {
  const SystemParams p(1.0, 1.0);
  const RateParams r{0.0, 100.0, 0.0, 0.0, 0.0};
  const auto d0 = DensityState::from_pure({0.0, 0.0, 1.0});
  try {
    propagate_density(p, r, ConstantEnvelope{0.0}, {0.0, 1.0}, d0, 0.1);
    FAIL("expected NegativePopulation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativePopulation);
  }
  const RateParams negative{-1.0, 0.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(negative.validate(), Error);
  DensityState bad;
  bad.s00 = 0.5;
  CHECK_THROWS_AS(propagate_density(p, RateParams{}, ConstantEnvelope{0.0}, {0.0, 1.0}, bad, 0.1),
                  Error);
}

TEST_CASE("fidelity degrades monotonically with the rates") {
  const SystemParams p(1.0, kSechAmp);
  const auto base = RateParams::uniform(2e-3, 1.4e-2);
  double previous = 2.0;
  for (double m : {0.0, 1.0, 2.0, 4.0}) {
    const double s22 = final_s22(p, base.scaled(m));
    CAPTURE(m);
    CHECK(s22 < previous);
    previous = s22;
  }
}

TEST_CASE("dissipative fidelities of the on-off-on pulses") {
  // Gamma = 1 ns^-1 and gamma = 7 ns^-1 in units of omega_b = 5 and 0.5 ps^-1.
  const auto fast = RateParams::uniform(2e-4, 1.4e-3);
  const auto slow = RateParams::uniform(2e-3, 1.4e-2);
  CHECK(std::abs(final_s22(SystemParams(1.0, kSechAmp), fast) - 0.9981) < 2e-3);
  CHECK(std::abs(final_s22(SystemParams(1.0, kSechAmp), slow) - 0.9812) < 2e-3);
  CHECK(std::abs(final_s22(SystemParams(1.0, 10.0), fast) - 0.9985) < 2e-3);
  CHECK(std::abs(final_s22(SystemParams(1.0, 10.0), slow) - 0.9856) < 2e-3);
}

TEST_CASE("csv output") {
  const SystemParams p(1.0, 2.0);
  const auto traj = propagate_three_level(p, ConstantEnvelope{2.0}, {0.0, 0.01}, {}, 5e-3);
  std::ostringstream os;
  write_csv(os, traj, {"run", 2.0});
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# run");
  std::getline(in, line);
  CHECK(line == "t,re_c0,im_c0,re_c1,im_c1,re_c2,im_c2,pop2");
  std::getline(in, line);
  CHECK(line == "0,1,0,0,0,0,0,0");
  std::getline(in, line);
  CHECK(line.rfind("0.01,", 0) == 0);

  const auto dens =
      propagate_density(p, RateParams{}, ConstantEnvelope{2.0}, {0.0, 0.01}, {}, 5e-3);
  std::ostringstream od;
  write_csv(od, dens);
  CHECK(od.str().rfind("t,s00,s11,s22,re_s01,im_s01,re_s02,im_s02,re_s12,im_s12\n", 0) == 0);
}

}  // TEST_SUITE
