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
#include "qubot/dynamics.hpp"
#include "qubot/errors.hpp"
#include "qubot/hilbert.hpp"
#include "test_helpers.hpp"

namespace {

using qubot::channels::JumpOperator;
using qubot::channels::ModelParams;
using qubot::dynamics::build_liouvillian;
using qubot::dynamics::devectorize;
using qubot::dynamics::Liouvillian;
using qubot::dynamics::vectorize;
using qubot::hilbert::DensityMatrix;
using qubot::linalg::Complex;
using qubot::linalg::ComplexMatrix;
using qubot::linalg::kron;
using qubot::linalg::max_abs_diff;

DensityMatrix random_start(std::mt19937& rng) {
  std::uniform_real_distribution<double> theta(0.0, M_PI);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * M_PI);
  DensityMatrix logical = qubot::hilbert::bloch_state(theta(rng), phi(rng));
  ComplexMatrix ground(2, 2);
  ground(0, 0) = 1.0;
  return DensityMatrix::checked(kron(logical.matrix(), ground));
}

}  // namespace

TEST_CASE("vectorize is column stacking and round-trips") {
  ComplexMatrix m = ComplexMatrix::from_rows(
      {{Complex(1, 1), Complex(2, 0)}, {Complex(3, 0), Complex(4, -1)}});
  auto v = vectorize(m);
  REQUIRE(v.size() == 4);
  // vec[j*d + i] = m(i, j): first the full first column
  CHECK(v[0] == Complex(1, 1));
  CHECK(v[1] == Complex(3, 0));
  CHECK(v[2] == Complex(2, 0));
  CHECK(v[3] == Complex(4, -1));
  CHECK(max_abs_diff(devectorize(v, 2), m) == 0.0);
}

TEST_CASE("vec(A rho B) = (B^T kron A) vec(rho)") {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix a = qubot::testing::random_matrix(rng, 3);
    ComplexMatrix b = qubot::testing::random_matrix(rng, 3);
    ComplexMatrix rho = qubot::testing::random_matrix(rng, 3);

    auto direct = vectorize(a * rho * b);
    ComplexMatrix op = kron(b.transpose(), a);
    std::vector<Complex> mapped(9);
    qubot::linalg::matvec(op, vectorize(rho), mapped);
    double diff = 0.0;
    for (std::size_t i = 0; i < 9; ++i)
      diff = std::max(diff, std::abs(direct[i] - mapped[i]));
    CHECK(diff <= 1e-12);
  }
}

TEST_CASE("liouvillian of the empty generator is zero") {
  ComplexMatrix h(4, 4);
  Liouvillian l = build_liouvillian(h, {});
  CHECK(l.dim == 4);
  CHECK(l.matrix.rows() == 16);
  CHECK(l.matrix.max_abs() == 0.0);
}

TEST_CASE("hamiltonian-only liouvillian matches the commutator form") {
  std::mt19937 rng(52);
  ComplexMatrix h = qubot::testing::random_hermitian(rng, 4);
  Liouvillian l = build_liouvillian(h, {});

  ComplexMatrix expected =
      kron(ComplexMatrix::identity(4), h) -
      kron(h.transpose(), ComplexMatrix::identity(4));
  expected *= Complex(0, -1);
  CHECK(max_abs_diff(l.matrix, expected) <= 1e-14);
}

TEST_CASE("liouvillian action equals the direct rhs on 50 random states") {
  std::mt19937 rng(53);
  ModelParams params;
  auto jumps = qubot::channels::model_jumps(params);
  ComplexMatrix h = qubot::channels::loop_hamiltonian(params.delta);
  Liouvillian l = build_liouvillian(h, jumps);

  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix rho = qubot::testing::random_unit_trace_hermitian(rng, 4);
    ComplexMatrix direct = qubot::channels::lindblad_rhs(h, jumps, rho);

    std::vector<Complex> image(16);
    qubot::linalg::matvec(l.matrix, vectorize(rho), image);
    CHECK(max_abs_diff(devectorize(image, 4), direct) <= 1e-12);
  }
}

TEST_CASE("a state commuting with the generator stays exactly constant") {
  // pure hamiltonian evolution, start state block-diagonal in its eigenbasis
  ComplexMatrix h = qubot::channels::loop_hamiltonian(1.0);
  DensityMatrix rho0 = qubot::hilbert::initial_qubot_state();
  auto traj = qubot::dynamics::evolve(rho0, h, {}, 1.0, 2.0, 0.5);
  REQUIRE(traj.times.size() == 5);
  for (const auto& state : traj.states)
    CHECK(max_abs_diff(state.matrix(), rho0.matrix()) == 0.0);
}

TEST_CASE("pure dephasing decays coherence as exp(-gamma t)") {
  const double gamma = 1.3;
  ModelParams params;
  params.gamma_dephasing = gamma;
  auto jumps = qubot::channels::free_spin_jumps(params);
  ComplexMatrix h(2, 2);
  DensityMatrix rho0 = qubot::hilbert::singlet_state();

  auto traj = qubot::dynamics::evolve(rho0, h, jumps, gamma, 3.0, 0.1);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double expected = -0.5 * std::exp(-gamma * traj.times[k]);
    CHECK(std::abs(traj.states[k](0, 1).real() - expected) <= 1e-9);
    CHECK(std::abs(traj.states[k](0, 1).imag()) <= 1e-12);
    CHECK(traj.states[k](0, 0).real() ==
          doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("sampling grid: times are multiples of sample_dt up to t_end") {
  ModelParams params;
  auto traj = qubot::dynamics::evolve(qubot::hilbert::initial_qubot_state(),
                                      params, 1.0, 0.25);
  REQUIRE(traj.times.size() == 5);
  for (std::size_t k = 0; k < 5; ++k)
    CHECK(traj.times[k] == doctest::Approx(0.25 * k).epsilon(1e-12));
  CHECK(traj.params == params);
}

TEST_CASE("trajectory samples keep density-matrix invariants") {
  ModelParams params;
  auto traj = qubot::dynamics::evolve(qubot::hilbert::initial_qubot_state(),
                                      params, 5.0, 0.05);
  for (const auto& state : traj.states) {
    CHECK(std::abs(state.matrix().trace().real() - 1.0) <= 1e-8);
    CHECK(state.matrix().hermiticity_defect() <= 1e-10);
  }
}

TEST_CASE("rk4 error shrinks 16x per step halving") {
  ModelParams params;
  auto jumps = qubot::channels::model_jumps(params);
  ComplexMatrix h = qubot::channels::loop_hamiltonian(params.delta);
  Liouvillian l = build_liouvillian(h, jumps);
  auto v0 = vectorize(qubot::hilbert::initial_qubot_state().matrix());

  auto integrate = [&](double step, std::size_t steps) {
    auto v = v0;
    qubot::dynamics::rk4_steps(l, v, step, steps);
    return v;
  };
  auto coarse = integrate(0.02, 50);
  auto medium = integrate(0.01, 100);
  auto fine = integrate(0.005, 200);

  double d1 = 0.0;
  double d2 = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    d1 = std::max(d1, std::abs(coarse[i] - medium[i]));
    d2 = std::max(d2, std::abs(medium[i] - fine[i]));
  }
  CHECK(d1 <= 1e-8);
  const double ratio = d1 / d2;
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("integrator matches the matrix exponential oracle") {
  ModelParams params;
  auto jumps = qubot::channels::model_jumps(params);
  ComplexMatrix h = qubot::channels::loop_hamiltonian(params.delta);
  Liouvillian l = build_liouvillian(h, jumps);

  ComplexMatrix lt = l.matrix;
  lt *= Complex(1.0, 0.0);  // t = 1
  ComplexMatrix propagator = qubot::testing::expm(lt);
  auto v0 = vectorize(qubot::hilbert::initial_qubot_state().matrix());
  std::vector<Complex> expected(16);
  qubot::linalg::matvec(propagator, v0, expected);

  auto traj = qubot::dynamics::evolve(qubot::hilbert::initial_qubot_state(),
                                      params, 1.0, 1.0);
  auto got = vectorize(traj.states.back().matrix());
  double diff = 0.0;
  for (std::size_t i = 0; i < 16; ++i)
    diff = std::max(diff, std::abs(expected[i] - got[i]));
  CHECK(diff <= 1e-7);
}

TEST_CASE("nullspace steady state: loop relaxation pins the ground state") {
  // single decay channel on a two-level system
  ComplexMatrix h(2, 2);
  ComplexMatrix decay(2, 2);
  decay(0, 1) = std::sqrt(0.8);
  std::vector<JumpOperator> jumps = {{decay, "F"}};
  Liouvillian l = build_liouvillian(h, jumps);
  DensityMatrix ss = qubot::dynamics::steady_state_nullspace(l);
  CHECK(ss(0, 0).real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(ss(1, 1)) <= 1e-10);
  CHECK(std::abs(ss(0, 1)) <= 1e-10);
}

TEST_CASE("nullspace steady state: pure dephasing is degenerate") {
  ModelParams params;
  auto jumps = qubot::channels::free_spin_jumps(params);
  ComplexMatrix h(2, 2);
  Liouvillian l = build_liouvillian(h, jumps);
  CHECK_THROWS_AS(qubot::dynamics::steady_state_nullspace(l),
                  qubot::DegenerateSteadyStateError);
}

TEST_CASE("full model: nullspace result is stationary and matches evolution") {
  ModelParams params;
  auto jumps = qubot::channels::model_jumps(params);
  ComplexMatrix h = qubot::channels::loop_hamiltonian(params.delta);
  Liouvillian l = build_liouvillian(h, jumps);
  DensityMatrix ss = qubot::dynamics::steady_state_nullspace(l);

  std::vector<Complex> image(16);
  qubot::linalg::matvec(l.matrix, vectorize(ss.matrix()), image);
  double residual = 0.0;
  for (const Complex& c : image) residual = std::max(residual, std::abs(c));
  CHECK(residual <= 1e-10);

  auto traj = qubot::dynamics::evolve(qubot::hilbert::initial_qubot_state(),
                                      params, 50.0, 50.0);
  CHECK(qubot::testing::trace_distance(traj.states.back().matrix(),
                                       ss.matrix()) <= 1e-6);
}

TEST_CASE("integration steady state agrees with the nullspace route") {
  ModelParams params;
  DensityMatrix by_integration = qubot::dynamics::steady_state_by_integration(
      qubot::hilbert::initial_qubot_state(), params);
  auto jumps = qubot::channels::model_jumps(params);
  Liouvillian l = build_liouvillian(
      qubot::channels::loop_hamiltonian(params.delta), jumps);
  DensityMatrix by_nullspace = qubot::dynamics::steady_state_nullspace(l);
  CHECK(max_abs_diff(by_integration.matrix(), by_nullspace.matrix()) <= 1e-8);
}

TEST_CASE("steady state is independent of the initial state") {
  std::mt19937 rng(54);
  ModelParams params;
  auto jumps = qubot::channels::model_jumps(params);
  Liouvillian l = build_liouvillian(
      qubot::channels::loop_hamiltonian(params.delta), jumps);
  DensityMatrix reference = qubot::dynamics::steady_state_nullspace(l);

  for (int trial = 0; trial < 20; ++trial) {
    DensityMatrix start = random_start(rng);
    DensityMatrix ss =
        qubot::dynamics::steady_state_by_integration(start, params);
    CHECK(qubot::testing::trace_distance(ss.matrix(), reference.matrix()) <=
          1e-6);
  }
}

TEST_CASE("starting at the steady state converges immediately") {
  ModelParams params;
  auto jumps = qubot::channels::model_jumps(params);
  Liouvillian l = build_liouvillian(
      qubot::channels::loop_hamiltonian(params.delta), jumps);
  DensityMatrix ss = qubot::dynamics::steady_state_nullspace(l);
  DensityMatrix again =
      qubot::dynamics::steady_state_by_integration(ss, params);
  CHECK(max_abs_diff(again.matrix(), ss.matrix()) <= 1e-10);
}

TEST_CASE("integration times out on a near-frozen generator") {
  // relaxation rate 1e-4: equilibration takes ~1e5 time units, far past
  // the 1e4 cap
  ComplexMatrix h(2, 2);
  ComplexMatrix decay(2, 2);
  decay(0, 1) = 1e-2;
  std::vector<JumpOperator> jumps = {{decay, "F"}};
  ComplexMatrix excited(2, 2);
  excited(1, 1) = 1.0;
  CHECK_THROWS_AS(qubot::dynamics::steady_state_by_integration(
                      DensityMatrix::checked(excited), h, jumps, 1.0),
                  qubot::NoConvergenceError);
}
