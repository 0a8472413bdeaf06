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

#include "qubot/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "qubot/errors.hpp"

namespace qubot::hilbert {

DensityMatrix DensityMatrix::checked(ComplexMatrix m) {
  if (m.rows() != m.cols()) {
    throw InvariantViolatedError("density matrix must be square");
  }
  if (!m.is_finite()) {
    throw InvariantViolatedError("density matrix has non-finite entries");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0)) > kTraceTol) {
    throw InvariantViolatedError("trace deviates from 1 beyond 1e-8");
  }
  if (m.hermiticity_defect() > kHermTol) {
    throw InvariantViolatedError("hermiticity defect above 1e-10");
  }
  const auto eig = linalg::hermitian_eig(m);
  if (eig.eigenvalues.front() < kEigFloor) {
    throw InvariantViolatedError("eigenvalue below -1e-8");
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) {
  return DensityMatrix(std::move(m));
}

std::vector<Complex> ket_zero() { return {1.0, 0.0}; }
std::vector<Complex> ket_one() { return {0.0, 1.0}; }

std::vector<Complex> ket_singlet() {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  return {inv_sqrt2, -inv_sqrt2};
}

std::vector<Complex> ket_triplet() {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  return {inv_sqrt2, inv_sqrt2};
}

std::vector<Complex> ket_loop_ground() { return {1.0, 0.0}; }
std::vector<Complex> ket_loop_excited() { return {0.0, 1.0}; }

DensityMatrix singlet_state() {
  const auto s = ket_singlet();
  return DensityMatrix::unchecked(linalg::outer(s, s));
}

DensityMatrix bloch_state(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi + 1e-12)) {
    throw ValidationError("theta", "must lie in [0, pi]");
  }
  const Complex a = std::cos(0.5 * theta);
  const Complex b = std::polar(std::sin(0.5 * theta), phi);
  const std::vector<Complex> psi = {a, b};
  return DensityMatrix::unchecked(linalg::outer(psi, psi));
}

DensityMatrix initial_qubot_state() {
  const auto logical = singlet_state();
  const auto ground = ket_loop_ground();
  return DensityMatrix::unchecked(
      linalg::kron(logical.matrix(), linalg::outer(ground, ground)));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  if (rho.dim() != 4) {
    throw DimensionMismatchError("partial trace expects a dim-4 state");
  }
  ComplexMatrix out(2, 2);
  if (keep == Subsystem::kSpins) {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        out(i, j) = rho(2 * i + 0, 2 * j + 0) + rho(2 * i + 1, 2 * j + 1);
  } else {
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t l = 0; l < 2; ++l)
        out(k, l) = rho(0 + k, 0 + l) + rho(2 + k, 2 + l);
  }
  return DensityMatrix::unchecked(std::move(out));
}

DensityMatrix embed_logical_to_two_spin(const DensityMatrix& rho_logical) {
  if (rho_logical.dim() != 2) {
    throw DimensionMismatchError("embedding expects a dim-2 state");
  }
  ComplexMatrix out(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      out(1 + i, 1 + j) = rho_logical(i, j);
  return DensityMatrix::unchecked(std::move(out));
}

}  // namespace qubot::hilbert
