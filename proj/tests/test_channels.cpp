// Copyright 2026 The qubot-sim Authors
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
#include <random>
#include <vector>

#include "doctest.h"
#include "qubot/channels.hpp"
#include "qubot/errors.hpp"
#include "qubot/hilbert.hpp"
#include "test_helpers.hpp"

namespace {

using qubot::channels::Environment;
using qubot::channels::JumpOperator;
using qubot::channels::ModelParams;
using qubot::hilbert::DensityMatrix;
using qubot::linalg::Complex;
using qubot::linalg::ComplexMatrix;
using qubot::linalg::max_abs_diff;

// composite basis: {|0,ground>, |0,excited>, |1,ground>, |1,excited>}
std::vector<Complex> composite_ket(int logical, int loop) {
  std::vector<Complex> v(4);
  v[logical * 2 + loop] = Complex(1, 0);
  return v;
}

std::vector<Complex> apply(const ComplexMatrix& m,
                           const std::vector<Complex>& v) {
  std::vector<Complex> out(m.rows());
  qubot::linalg::matvec(m, v, out);
  return out;
}

ComplexMatrix jump_sum(std::span<const JumpOperator> jumps) {
  ComplexMatrix sum(jumps[0].matrix.rows(), jumps[0].matrix.cols());
  for (const auto& j : jumps) sum += j.matrix.adjoint() * j.matrix;
  return sum;
}

}  // namespace

TEST_CASE("ModelParams: recovery rate, validation, rate scale") {
  ModelParams p;
  CHECK(p.gamma_dephasing == 1.0);
  CHECK(p.gamma_forget == 1.5);
  CHECK(p.correction_time == 0.0);
  CHECK(p.delta == 1.0);
  CHECK(p.recovery() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(p.rate_scale() == doctest::Approx(1.0 + 1.5 + 1.5 + 1.0));
  CHECK_NOTHROW(p.validate());

  ModelParams slow = p;
  slow.correction_time = 1.0;
  slow.gamma_forget = 1.0;
  CHECK(slow.recovery() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(slow.recovery() < slow.gamma_forget);

  ModelParams bad = p;
  bad.gamma_dephasing = -0.1;
  CHECK_THROWS_AS(bad.validate(), qubot::ValidationError);
  bad = p;
  bad.delta = 0.0;
  CHECK_THROWS_AS(bad.validate(), qubot::ValidationError);
  bad = p;
  bad.correction_time = -1.0;
  CHECK_THROWS_AS(bad.validate(), qubot::ValidationError);
}

TEST_CASE("recovery_rate formula and zero-forgetness guard") {
  CHECK(qubot::channels::recovery_rate(0.0, 1.5) ==
        doctest::Approx(1.5).epsilon(1e-15));
  CHECK(qubot::channels::recovery_rate(1.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(qubot::channels::recovery_rate(0.0, 0.0),
                  qubot::ZeroForgetnessError);
  CHECK_THROWS_AS(qubot::channels::recovery_rate(0.5, -1.0),
                  qubot::ZeroForgetnessError);
}

TEST_CASE("loop hamiltonian is diag(d/2, -d/2, d/2, -d/2)") {
  ComplexMatrix h = qubot::channels::loop_hamiltonian(1.0);
  ComplexMatrix expected(4, 4);
  expected(0, 0) = 0.5;
  expected(1, 1) = -0.5;
  expected(2, 2) = 0.5;
  expected(3, 3) = -0.5;
  CHECK(max_abs_diff(h, expected) == 0.0);

  ComplexMatrix h2 = qubot::channels::loop_hamiltonian(3.0);
  CHECK(h2(0, 0).real() == doctest::Approx(1.5));
}

TEST_CASE("dephasing jumps project the logical basis states") {
  auto jumps = qubot::channels::dephasing_jumps(4.0);  // amplitude 2
  CHECK(jumps[0].label == "D0");
  CHECK(jumps[1].label == "D1");

  auto d0_on_zero = apply(jumps[0].matrix, composite_ket(0, 0));
  CHECK(std::abs(d0_on_zero[0] - Complex(2, 0)) <= 1e-15);
  auto d0_on_one = apply(jumps[0].matrix, composite_ket(1, 0));
  CHECK(qubot::testing::norm2(d0_on_one) <= 1e-15);
  auto d1_on_one = apply(jumps[1].matrix, composite_ket(1, 1));
  CHECK(std::abs(d1_on_one[3] - Complex(2, 0)) <= 1e-15);

  // the pair sums to gamma * identity: pure dephasing, no dissipation
  ComplexMatrix sum = jump_sum(jumps);
  ComplexMatrix expected = ComplexMatrix::identity(4);
  expected *= Complex(4.0, 0.0);
  CHECK(max_abs_diff(sum, expected) <= 1e-14);
}

TEST_CASE("recovery jumps map triplet to singlet and flip the loop") {
  const double r = 2.25;  // amplitude 1.5
  auto jumps = qubot::channels::recovery_jumps(r);
  CHECK(jumps[0].label == "R0");
  CHECK(jumps[1].label == "R1");

  // |t, ground> -> sqrt(r) |s, excited>
  std::vector<Complex> t_ground(4);
  t_ground[0] = Complex(std::sqrt(0.5), 0);
  t_ground[2] = Complex(std::sqrt(0.5), 0);
  auto corrected = apply(jumps[1].matrix, t_ground);
  // |s, excited> has +1/sqrt(2) at index 1 and -1/sqrt(2) at index 3
  CHECK(std::abs(corrected[1] - Complex(1.5 * std::sqrt(0.5), 0)) <= 1e-12);
  CHECK(std::abs(corrected[3] + Complex(1.5 * std::sqrt(0.5), 0)) <= 1e-12);
  CHECK(std::abs(corrected[0]) <= 1e-15);
  CHECK(std::abs(corrected[2]) <= 1e-15);

  // R1 annihilates the singlet, R0 fixes it (up to amplitude)
  std::vector<Complex> s_ground(4);
  s_ground[0] = Complex(std::sqrt(0.5), 0);
  s_ground[2] = Complex(-std::sqrt(0.5), 0);
  CHECK(qubot::testing::norm2(apply(jumps[1].matrix, s_ground)) <= 1e-15);
  auto kept = apply(jumps[0].matrix, s_ground);
  CHECK(std::abs(kept[0] - Complex(1.5 * std::sqrt(0.5), 0)) <= 1e-12);
}

TEST_CASE("forgetness relaxes the loop and annihilates the ground state") {
  auto f = qubot::channels::forgetness_jump(0.25);  // amplitude 0.5
  auto relaxed = apply(f.matrix, composite_ket(1, 1));
  CHECK(std::abs(relaxed[2] - Complex(0.5, 0)) <= 1e-15);
  CHECK(qubot::testing::norm2(apply(f.matrix, composite_ket(1, 0))) <= 1e-15);
  CHECK(f.label == "F");
}

TEST_CASE("photodissociation maps singlet to triplet") {
  auto p = qubot::channels::photodissociation_jump(1.0);
  std::vector<Complex> s_ground(4);
  s_ground[0] = Complex(std::sqrt(0.5), 0);
  s_ground[2] = Complex(-std::sqrt(0.5), 0);
  auto hit = apply(p.matrix, s_ground);
  // lands on |t, ground>: equal + components at indices 0 and 2
  CHECK(std::abs(hit[0] - Complex(std::sqrt(0.5), 0)) <= 1e-12);
  CHECK(std::abs(hit[2] - Complex(std::sqrt(0.5), 0)) <= 1e-12);

  // triplet is annihilated
  std::vector<Complex> t_ground(4);
  t_ground[0] = Complex(std::sqrt(0.5), 0);
  t_ground[2] = Complex(std::sqrt(0.5), 0);
  CHECK(qubot::testing::norm2(apply(p.matrix, t_ground)) <= 1e-15);
  CHECK(p.label == "P");
}

TEST_CASE("jump amplitudes scale as sqrt of the rate") {
  auto weak = qubot::channels::dephasing_jumps(0.5);
  auto strong = qubot::channels::dephasing_jumps(2.0);
  // rate ratio 4 -> amplitude ratio 2
  CHECK(strong[0].matrix(0, 0).real() ==
        doctest::Approx(2.0 * weak[0].matrix(0, 0).real()).epsilon(1e-14));
}

TEST_CASE("lindblad_rhs preserves trace and hermiticity on random input") {
  std::mt19937 rng(41);
  ModelParams params;
  auto jumps = qubot::channels::model_jumps(params);
  ComplexMatrix h = qubot::channels::loop_hamiltonian(params.delta);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix rho = qubot::testing::random_unit_trace_hermitian(rng, 4);
    ComplexMatrix rhs = qubot::channels::lindblad_rhs(h, jumps, rho);
    CHECK(std::abs(rhs.trace()) <= 1e-12);
    CHECK(rhs.hermiticity_defect() <= 1e-12);
  }
}

TEST_CASE("lindblad_rhs: pure dephasing decays logical coherence at rate gamma") {
  const double gamma = 1.7;
  auto jumps = qubot::channels::dephasing_jumps(gamma);
  ComplexMatrix h(4, 4);  // no hamiltonian
  ComplexMatrix rho =
      qubot::hilbert::initial_qubot_state().matrix();
  ComplexMatrix rhs = qubot::channels::lindblad_rhs(h, jumps, rho);
  // logical coherence entries live at (0,2) and (2,0)
  CHECK(std::abs(rhs(0, 2) - Complex(-gamma, 0) * rho(0, 2)) <= 1e-14);
  CHECK(std::abs(rhs(2, 0) - Complex(-gamma, 0) * rho(2, 0)) <= 1e-14);
  // populations are untouched by pure dephasing
  CHECK(std::abs(rhs(0, 0)) <= 1e-14);
  CHECK(std::abs(rhs(2, 2)) <= 1e-14);
}

TEST_CASE("lindblad_rhs: hamiltonian-only reduces to the commutator") {
  std::mt19937 rng(42);
  ComplexMatrix h = qubot::testing::random_hermitian(rng, 4);
  ComplexMatrix rho = qubot::testing::random_density(rng, 4);
  ComplexMatrix rhs = qubot::channels::lindblad_rhs(h, {}, rho);
  ComplexMatrix commutator = h * rho - rho * h;
  commutator *= Complex(0, -1);
  CHECK(max_abs_diff(rhs, commutator) <= 1e-14);
}

TEST_CASE("discrete_dephasing endpoints and guards") {
  DensityMatrix s = qubot::hilbert::singlet_state();

  DensityMatrix same = qubot::channels::discrete_dephasing(s, 0.0);
  CHECK(max_abs_diff(same.matrix(), s.matrix()) == 0.0);

  DensityMatrix mixed = qubot::channels::discrete_dephasing(s, 1.0);
  CHECK(mixed(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(mixed(0, 1)) <= 1e-15);

  DensityMatrix half = qubot::channels::discrete_dephasing(s, 0.5);
  CHECK(half(0, 1).real() == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(half.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(qubot::channels::discrete_dephasing(s, -0.01),
                  qubot::InvalidProbabilityError);
  CHECK_THROWS_AS(qubot::channels::discrete_dephasing(s, 1.01),
                  qubot::InvalidProbabilityError);
}

TEST_CASE("model_jumps composition per environment") {
  ModelParams p;
  auto dephasing = qubot::channels::model_jumps(p);
  REQUIRE(dephasing.size() == 5);
  CHECK(dephasing[0].label == "D0");
  CHECK(dephasing[1].label == "D1");
  CHECK(dephasing[2].label == "R0");
  CHECK(dephasing[3].label == "R1");
  CHECK(dephasing[4].label == "F");
  for (const auto& j : dephasing) CHECK(j.matrix.rows() == 4);

  p.environment = Environment::kPhotodissociation;
  auto photo = qubot::channels::model_jumps(p);
  REQUIRE(photo.size() == 4);
  CHECK(photo[0].label == "P");
  CHECK(photo[3].label == "F");
}

TEST_CASE("free_spin_jumps act on the bare pair") {
  ModelParams p;
  auto free_deph = qubot::channels::free_spin_jumps(p);
  REQUIRE(free_deph.size() == 2);
  CHECK(free_deph[0].matrix.rows() == 2);

  p.environment = Environment::kPhotodissociation;
  auto free_photo = qubot::channels::free_spin_jumps(p);
  REQUIRE(free_photo.size() == 1);
  CHECK(free_photo[0].matrix.rows() == 2);
  CHECK(free_photo[0].label == "P");
}

TEST_CASE("operating point: protected example passes, anchor does not") {
  ModelParams good;
  good.gamma_dephasing = 0.1;
  good.gamma_forget = 1.0;
  good.delta = 1.0;
  auto report = qubot::channels::validate_operating_point(good);
  CHECK(report.protective.satisfied);
  CHECK(report.protective.margin == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.feasible_gap.satisfied);
  CHECK(report.feasible_gap.margin == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.forgetness_bounded.satisfied);
  CHECK(report.forgetness_bounded.marginal);  // gamma_forget == delta

  ModelParams anchor;  // defaults: 1.0, 1.5, delta 1
  auto r2 = qubot::channels::validate_operating_point(anchor);
  CHECK_FALSE(r2.protective.satisfied);
  CHECK_FALSE(r2.feasible_gap.satisfied);
  CHECK_FALSE(r2.forgetness_bounded.satisfied);
}

TEST_CASE("operating point: strict boundary and hardware-scale numbers") {
  ModelParams edge;
  edge.gamma_dephasing = 0.2;
  edge.gamma_forget = 1.0;  // exactly 5x
  edge.delta = 1.0;
  auto report = qubot::channels::validate_operating_point(edge);
  CHECK_FALSE(report.protective.satisfied);  // strict inequality
  CHECK(report.protective.marginal);
  CHECK(report.protective.margin == 0.0);
  CHECK(report.feasible_gap.satisfied);  // 1.0 >= 1.0 holds, marginal
  CHECK(report.feasible_gap.marginal);

  ModelParams hw;
  hw.gamma_dephasing = 5e3;  // 1 / (200 us)
  hw.gamma_forget = 1e6;
  hw.delta = 1e9;
  auto hw_report = qubot::channels::validate_operating_point(hw);
  CHECK(hw_report.protective.satisfied);
  CHECK(hw_report.feasible_gap.satisfied);
  CHECK(hw_report.feasible_gap.margin ==
        doctest::Approx(1e9 - 2.5e4).epsilon(1e-12));
  CHECK(hw_report.forgetness_bounded.satisfied);
}
