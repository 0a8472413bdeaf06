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

#ifndef QUBOT_DYNAMICS_HPP_
#define QUBOT_DYNAMICS_HPP_

#include <span>
#include <vector>

#include "qubot/channels.hpp"
#include "qubot/hilbert.hpp"
#include "qubot/linalg.hpp"

namespace qubot::dynamics {

using channels::JumpOperator;
using channels::ModelParams;
using hilbert::DensityMatrix;
using linalg::Complex;
using linalg::ComplexMatrix;

/// Sampled solution of the master equation.
struct Trajectory {
  std::vector<double> times;          // strictly increasing, units 1/delta
  std::vector<DensityMatrix> states;  // one per sample, invariants validated
  ModelParams params;
};

/// Matrix form of the generator on column-stacked states,
/// vec(rho)[j*dim+i] = rho(i, j). For a dim-d Hilbert space the matrix is
/// d^2 x d^2.
struct Liouvillian {
  ComplexMatrix matrix;
  std::size_t dim = 0;  // Hilbert-space dimension d
};

/// Column-stacking helpers.
std::vector<Complex> vectorize(const ComplexMatrix& m);
ComplexMatrix devectorize(std::span<const Complex> v, std::size_t dim);

/// Assembles the vectorized generator. With the column-stacking convention
/// vec(A rho B) = (B^T (x) A) vec(rho):
///   L = -i (I (x) h - h^T (x) I)
///     + sum_a [ conj(L_a) (x) L_a
///               - 1/2 I (x) (L_a^dag L_a) - 1/2 (L_a^dag L_a)^T (x) I ].
Liouvillian build_liouvillian(const ComplexMatrix& h,
                              std::span<const JumpOperator> jumps);

/// Advances v (a column-stacked state) in place by `steps` classical RK4
/// steps of size h. Exposed so tests can drive custom step sizes.
void rk4_steps(const Liouvillian& liouvillian, std::vector<Complex>& v,
               double h, std::size_t steps);

/// Integrates the full model from rho0, sampling every sample_dt up to
/// t_end (rounded to the nearest sample). The internal RK4 step obeys
/// h * (gamma_dephasing + gamma_forget + r + delta) <= 0.01. Every sample is
/// validated against the DensityMatrix invariants (InvariantViolated on
/// drift).
Trajectory evolve(const DensityMatrix& rho0, const ModelParams& params,
                  double t_end, double sample_dt);

/// Same integrator on an explicit (h, jumps) pair; rate_scale plays the role
/// of gamma_dephasing + gamma_forget + r + delta in the step bound. The
/// returned trajectory carries default params.
Trajectory evolve(const DensityMatrix& rho0, const ComplexMatrix& h,
                  std::span<const JumpOperator> jumps, double rate_scale,
                  double t_end, double sample_dt);

/// Steady state as the one-dimensional null space of the Liouvillian: a rank
/// test on the singular spectrum (via L^dag L), then a linear solve with one
/// row replaced by the trace functional. Throws DegenerateSteadyState when
/// the null space has dimension > 1.
DensityMatrix steady_state_nullspace(const Liouvillian& liouvillian);

/// Steady state by long-time integration: integrates until the max-abs
/// difference across consecutive unit-time samples stays below 1e-12 for 10
/// samples in a row, or throws NoConvergence at t = 1e4.
DensityMatrix steady_state_by_integration(const DensityMatrix& rho0,
                                          const ModelParams& params);
DensityMatrix steady_state_by_integration(const DensityMatrix& rho0,
                                          const ComplexMatrix& h,
                                          std::span<const JumpOperator> jumps,
                                          double rate_scale);

}  // namespace qubot::dynamics

#endif  // QUBOT_DYNAMICS_HPP_
