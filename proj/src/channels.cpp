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

#include "qubot/channels.hpp"

#include <cmath>
#include <utility>

#include "qubot/errors.hpp"

namespace qubot::channels {

namespace {

ComplexMatrix logical_projector_zero() {
  const auto k = hilbert::ket_zero();
  return linalg::outer(k, k);
}

ComplexMatrix logical_projector_one() {
  const auto k = hilbert::ket_one();
  return linalg::outer(k, k);
}

ComplexMatrix loop_identity() { return ComplexMatrix::identity(2); }

ComplexMatrix loop_flip() {
  return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
}

ComplexMatrix loop_lowering() {
  // |Phi0><Phi1|
  return ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
}

void require_rate(const char* name, double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ValidationError(name, "must be a finite non-negative rate");
  }
}

}  // namespace

double ModelParams::recovery() const {
  return recovery_rate(correction_time, gamma_forget);
}

double ModelParams::rate_scale() const {
  return gamma_dephasing + gamma_forget + recovery() + delta;
}

void ModelParams::validate() const {
  require_rate("gamma_dephasing", gamma_dephasing);
  if (!(gamma_forget > 0.0) || !std::isfinite(gamma_forget)) {
    throw ValidationError("gamma_forget", "must be a finite positive rate");
  }
  if (!(correction_time >= 0.0) || !std::isfinite(correction_time)) {
    throw ValidationError("correction_time", "must be finite and >= 0");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ValidationError("delta", "must be finite and > 0");
  }
}

ComplexMatrix loop_hamiltonian(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ValidationError("delta", "must be finite and > 0");
  }
  const ComplexMatrix sigma_z =
      ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
  return linalg::kron(ComplexMatrix::identity(2), 0.5 * delta * sigma_z);
}

std::array<JumpOperator, 2> dephasing_jumps(double gamma_dephasing) {
  require_rate("gamma_dephasing", gamma_dephasing);
  const double amp = std::sqrt(gamma_dephasing);
  return {JumpOperator{amp * linalg::kron(logical_projector_zero(), loop_identity()),
                       "D0"},
          JumpOperator{amp * linalg::kron(logical_projector_one(), loop_identity()),
                       "D1"}};
}

std::array<JumpOperator, 2> recovery_jumps(double recovery_rate) {
  require_rate("recovery_rate", recovery_rate);
  const double amp = std::sqrt(recovery_rate);
  const auto s = hilbert::ket_singlet();
  const auto t = hilbert::ket_triplet();
  return {JumpOperator{amp * linalg::kron(linalg::outer(s, s), loop_identity()),
                       "R0"},
          JumpOperator{amp * linalg::kron(linalg::outer(s, t), loop_flip()),
                       "R1"}};
}

JumpOperator forgetness_jump(double gamma_forget) {
  require_rate("gamma_forget", gamma_forget);
  return {std::sqrt(gamma_forget) *
              linalg::kron(ComplexMatrix::identity(2), loop_lowering()),
          "F"};
}

JumpOperator photodissociation_jump(double gamma_dephasing) {
  require_rate("gamma_dephasing", gamma_dephasing);
  const auto s = hilbert::ket_singlet();
  const auto t = hilbert::ket_triplet();
  return {std::sqrt(gamma_dephasing) *
              linalg::kron(linalg::outer(t, s), loop_identity()),
          "P"};
}

double recovery_rate(double correction_time, double gamma_forget) {
  if (!(gamma_forget > 0.0)) {
    throw ZeroForgetnessError(
        "recovery rate undefined for non-positive gamma_forget");
  }
  if (!(correction_time >= 0.0)) {
    throw ValidationError("correction_time", "must be >= 0");
  }
  return 1.0 / (correction_time + 1.0 / gamma_forget);
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& h,
                           std::span<const JumpOperator> jumps,
                           const ComplexMatrix& rho) {
  if (h.rows() != rho.rows() || h.cols() != rho.cols()) {
    throw DimensionMismatchError("hamiltonian/state shape mismatch");
  }
  const Complex minus_i(0.0, -1.0);
  ComplexMatrix out = minus_i * (h * rho - rho * h);
  for (const auto& jump : jumps) {
    const ComplexMatrix& l = jump.matrix;
    if (l.rows() != rho.rows()) {
      throw DimensionMismatchError("jump operator shape mismatch");
    }
    const ComplexMatrix ldag = l.adjoint();
    const ComplexMatrix ldag_l = ldag * l;
    out += l * rho * ldag;
    out -= Complex(0.5) * (ldag_l * rho + rho * ldag_l);
  }
  return out;
}

DensityMatrix discrete_dephasing(const DensityMatrix& rho, double p) {
  if (rho.dim() != 2) {
    throw DimensionMismatchError("discrete dephasing expects a dim-2 state");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidProbabilityError("p must lie in [0, 1]");
  }
  // (1-p) rho + p (P0 rho P0 + P1 rho P1): diagonals fixed, coherences
  // shrink by (1-p).
  ComplexMatrix out = rho.matrix();
  out(0, 1) *= (1.0 - p);
  out(1, 0) *= (1.0 - p);
  return DensityMatrix::unchecked(std::move(out));
}

std::vector<JumpOperator> model_jumps(const ModelParams& params) {
  params.validate();
  std::vector<JumpOperator> jumps;
  if (params.environment == Environment::kDephasing) {
    for (auto& j : dephasing_jumps(params.gamma_dephasing))
      jumps.push_back(std::move(j));
  } else {
    jumps.push_back(photodissociation_jump(params.gamma_dephasing));
  }
  for (auto& j : recovery_jumps(params.recovery()))
    jumps.push_back(std::move(j));
  jumps.push_back(forgetness_jump(params.gamma_forget));
  return jumps;
}

std::vector<JumpOperator> free_spin_jumps(const ModelParams& params) {
  params.validate();
  std::vector<JumpOperator> jumps;
  const double amp = std::sqrt(params.gamma_dephasing);
  if (params.environment == Environment::kDephasing) {
    jumps.push_back({amp * logical_projector_zero(), "D0"});
    jumps.push_back({amp * logical_projector_one(), "D1"});
  } else {
    const auto s = hilbert::ket_singlet();
    const auto t = hilbert::ket_triplet();
    jumps.push_back({amp * linalg::outer(t, s), "P"});
  }
  return jumps;
}

namespace {

OperatingPointFinding finding(double lhs, double rhs, bool strict) {
  // Checks lhs > rhs (strict) or lhs >= rhs; equality is marginal.
  OperatingPointFinding f;
  f.margin = lhs - rhs;
  f.marginal = (lhs == rhs);
  f.satisfied = strict ? (lhs > rhs) : (lhs >= rhs);
  return f;
}

}  // namespace

OperatingPointReport validate_operating_point(const ModelParams& params) {
  OperatingPointReport report;
  report.protective =
      finding(params.gamma_forget, 5.0 * params.gamma_dephasing, true);
  report.feasible_gap =
      finding(params.delta, 5.0 * params.gamma_dephasing, false);
  report.forgetness_bounded =
      finding(params.delta, params.gamma_forget, false);
  return report;
}

}  // namespace qubot::channels
