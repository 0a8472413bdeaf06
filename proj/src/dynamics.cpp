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

#include "qubot/dynamics.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

#include "qubot/errors.hpp"

namespace qubot::dynamics {

namespace {

constexpr double kStepBound = 0.01;     // h * rate_scale <= this
constexpr double kNullRelTol = 1e-7;    // singular values below this (relative
                                        // to the largest) count as null
constexpr double kConvergenceTol = 1e-12;
constexpr int kConvergenceWindow = 10;
constexpr double kConvergenceSampleDt = 1.0;
constexpr double kConvergenceTimeout = 1e4;

std::size_t steps_for(double duration, double rate_scale) {
  const double min_steps = duration * rate_scale / kStepBound;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(min_steps)));
}

}  // namespace

std::vector<Complex> vectorize(const ComplexMatrix& m) {
  const std::size_t d = m.rows();
  std::vector<Complex> v(d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) v[j * d + i] = m(i, j);
  return v;
}

ComplexMatrix devectorize(std::span<const Complex> v, std::size_t dim) {
  if (v.size() != dim * dim) {
    throw DimensionMismatchError("vector length is not dim^2");
  }
  ComplexMatrix m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = v[j * dim + i];
  return m;
}

Liouvillian build_liouvillian(const ComplexMatrix& h,
                              std::span<const JumpOperator> jumps) {
  if (h.rows() != h.cols()) {
    throw DimensionMismatchError("hamiltonian must be square");
  }
  const std::size_t d = h.rows();
  const ComplexMatrix eye = ComplexMatrix::identity(d);
  const Complex minus_i(0.0, -1.0);

  ComplexMatrix l =
      minus_i * (linalg::kron(eye, h) - linalg::kron(h.transpose(), eye));
  for (const auto& jump : jumps) {
    const ComplexMatrix& op = jump.matrix;
    if (op.rows() != d || op.cols() != d) {
      throw DimensionMismatchError("jump operator dim mismatch");
    }
    const ComplexMatrix opdag_op = op.adjoint() * op;
    l += linalg::kron(op.conjugate(), op);
    l -= Complex(0.5) * linalg::kron(eye, opdag_op);
    l -= Complex(0.5) * linalg::kron(opdag_op.transpose(), eye);
  }
  return Liouvillian{std::move(l), d};
}

void rk4_steps(const Liouvillian& liouvillian, std::vector<Complex>& v,
               double h, std::size_t steps) {
  const std::size_t n = v.size();
  if (liouvillian.matrix.rows() != n) {
    throw DimensionMismatchError("state length does not match liouvillian");
  }
  std::vector<Complex> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t s = 0; s < steps; ++s) {
    linalg::matvec(liouvillian.matrix, v, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * h * k1[i];
    linalg::matvec(liouvillian.matrix, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * h * k2[i];
    linalg::matvec(liouvillian.matrix, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + h * k3[i];
    linalg::matvec(liouvillian.matrix, tmp, k4);
    const double w = h / 6.0;
    for (std::size_t i = 0; i < n; ++i)
      v[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

namespace {

Trajectory evolve_impl(const DensityMatrix& rho0, const Liouvillian& liou,
                       double rate_scale, double t_end, double sample_dt,
                       ModelParams params) {
  if (!(t_end > 0.0)) throw ValidationError("t_end", "must be > 0");
  if (!(sample_dt > 0.0)) throw ValidationError("sample_dt", "must be > 0");

  const auto n_samples =
      static_cast<std::size_t>(std::llround(t_end / sample_dt));
  const std::size_t steps_per_sample = steps_for(sample_dt, rate_scale);
  const double h = sample_dt / static_cast<double>(steps_per_sample);

  Trajectory traj;
  traj.params = params;
  traj.times.reserve(n_samples + 1);
  traj.states.reserve(n_samples + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(DensityMatrix::checked(rho0.matrix()));

  std::vector<Complex> v = vectorize(rho0.matrix());
  for (std::size_t k = 1; k <= n_samples; ++k) {
    rk4_steps(liou, v, h, steps_per_sample);
    traj.times.push_back(static_cast<double>(k) * sample_dt);
    traj.states.push_back(
        DensityMatrix::checked(devectorize(v, liou.dim)));
  }
  return traj;
}

}  // namespace

Trajectory evolve(const DensityMatrix& rho0, const ModelParams& params,
                  double t_end, double sample_dt) {
  params.validate();
  const ComplexMatrix h = channels::loop_hamiltonian(params.delta);
  const auto jumps = channels::model_jumps(params);
  const Liouvillian liou = build_liouvillian(h, jumps);
  if (rho0.dim() != liou.dim) {
    throw DimensionMismatchError("initial state dim mismatch");
  }
  return evolve_impl(rho0, liou, params.rate_scale(), t_end, sample_dt,
                     params);
}

Trajectory evolve(const DensityMatrix& rho0, const ComplexMatrix& h,
                  std::span<const JumpOperator> jumps, double rate_scale,
                  double t_end, double sample_dt) {
  const Liouvillian liou = build_liouvillian(h, jumps);
  if (rho0.dim() != liou.dim) {
    throw DimensionMismatchError("initial state dim mismatch");
  }
  return evolve_impl(rho0, liou, rate_scale, t_end, sample_dt, ModelParams{});
}

DensityMatrix steady_state_nullspace(const Liouvillian& liouvillian) {
  const ComplexMatrix& l = liouvillian.matrix;
  const std::size_t d = liouvillian.dim;
  const std::size_t n = d * d;

  // Rank test on the singular spectrum: the eigenvalues of L^dag L are the
  // squared singular values of L.
  const ComplexMatrix gram = l.adjoint() * l;
  const auto eig = linalg::hermitian_eig(gram);
  const double sigma_max =
      std::sqrt(std::max(eig.eigenvalues.back(), 0.0));
  const double null_floor = kNullRelTol * std::max(sigma_max, 1e-300);
  std::size_t null_dim = 0;
  for (double lambda : eig.eigenvalues) {
    if (std::sqrt(std::max(lambda, 0.0)) < null_floor) ++null_dim;
  }
  if (null_dim > 1) {
    throw DegenerateSteadyStateError(
        "liouvillian null space has dimension > 1");
  }

  // Replace one row with the trace functional and solve L x = e_row. If the
  // replaced row happened to carry essential rank, retry with the next one.
  for (std::size_t row = 0; row < n; ++row) {
    ComplexMatrix a = l;
    std::vector<Complex> b(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) a(row, j) = 0.0;
    for (std::size_t i = 0; i < d; ++i) a(row, i * d + i) = 1.0;
    b[row] = 1.0;
    std::vector<Complex> x;
    try {
      x = linalg::solve_linear(std::move(a), std::move(b));
    } catch (const SingularError&) {
      continue;
    }
    ComplexMatrix rho = devectorize(x, d);
    // Symmetrize away solver roundoff; the physical solution is Hermitian.
    ComplexMatrix herm(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        herm(i, j) = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
    return DensityMatrix::checked(std::move(herm));
  }
  throw DegenerateSteadyStateError(
      "no trace-row replacement yields a solvable system");
}

namespace {

DensityMatrix integrate_to_steady(const DensityMatrix& rho0,
                                  const Liouvillian& liou, double rate_scale) {
  std::vector<Complex> v = vectorize(rho0.matrix());
  std::vector<Complex> prev = v;
  const std::size_t steps = steps_for(kConvergenceSampleDt, rate_scale);
  const double h = kConvergenceSampleDt / static_cast<double>(steps);

  int quiet = 0;
  double t = 0.0;
  while (t < kConvergenceTimeout) {
    prev = v;
    rk4_steps(liou, v, h, steps);
    t += kConvergenceSampleDt;
    double diff = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      diff = std::max(diff, std::abs(v[i] - prev[i]));
    quiet = diff < kConvergenceTol ? quiet + 1 : 0;
    if (quiet >= kConvergenceWindow) {
      return DensityMatrix::checked(devectorize(v, liou.dim));
    }
  }
  throw NoConvergenceError(
      "steady-state integration did not settle before t = 1e4");
}

}  // namespace

DensityMatrix steady_state_by_integration(const DensityMatrix& rho0,
                                          const ModelParams& params) {
  params.validate();
  const ComplexMatrix h = channels::loop_hamiltonian(params.delta);
  const auto jumps = channels::model_jumps(params);
  const Liouvillian liou = build_liouvillian(h, jumps);
  return integrate_to_steady(rho0, liou, params.rate_scale());
}

DensityMatrix steady_state_by_integration(const DensityMatrix& rho0,
                                          const ComplexMatrix& h,
                                          std::span<const JumpOperator> jumps,
                                          double rate_scale) {
  const Liouvillian liou = build_liouvillian(h, jumps);
  return integrate_to_steady(rho0, liou, rate_scale);
}

}  // namespace qubot::dynamics
