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

#ifndef QUBOT_METRICS_HPP_
#define QUBOT_METRICS_HPP_

#include <span>
#include <utility>

#include "qubot/hilbert.hpp"

namespace qubot::metrics {

using hilbert::DensityMatrix;

/// Entropy base for reporting. The underlying operation is base-agnostic;
/// nats is the reporting default (calibrated against the steady-state
/// entropy levels this model is known to reach in its protective regime),
/// bits remain available and are always stated in output headers.
enum class EntropyBase { kBits, kNats };

/// Both singlet-fidelity conventions are computed; the overlap form is the
/// calibrated reporting default.
enum class FidelityConvention { kOverlap, kSqrt };

/// One row of scenario output. Entropies are in the base the producer chose;
/// all values live in [0, 1] up to 1e-8.
struct MetricSample {
  double time = 0.0;
  double concurrence_ab = 0.0;
  double entropy_ab = 0.0;
  double entropy_loop = 0.0;
  double fidelity_singlet = 0.0;

  /// Throws InvariantViolated if any value leaves its range by more than
  /// 1e-8.
  void validate() const;
};

/// Wootters concurrence of a two-spin state (dim 4, basis uu/ud/du/dd):
/// C = max(0, l1 - l2 - l3 - l4) with l_i the decreasing square roots of the
/// eigenvalues of sqrt(rho) rho_tilde sqrt(rho),
/// rho_tilde = (sy (x) sy) conj(rho) (sy (x) sy). Logical (dim-2) states go
/// through embed_logical_to_two_spin first.
double concurrence(const DensityMatrix& rho_two_spin);

/// S = -sum_i l_i log l_i over the spectrum, eigenvalues below 1e-12
/// skipped. Defaults to bits; pass EntropyBase::kNats for natural log.
double von_neumann_entropy(const DensityMatrix& rho,
                           EntropyBase base = EntropyBase::kBits);

struct SingletFidelity {
  double overlap = 0.0;       // <s|rho|s>
  double sqrt_overlap = 0.0;  // sqrt(<s|rho|s>), the pure-target Uhlmann form
};

/// Both fidelity conventions with respect to the logical singlet (dim 2).
SingletFidelity fidelity_to_singlet(const DensityMatrix& rho_logical);

double fidelity_value(const SingletFidelity& f, FidelityConvention convention);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Pauli expectation triple of a logical state in the {|0>, |1>} basis.
/// The singlet sits at (-1, 0, 0), |0><0| at the north pole (0, 0, 1).
BlochVector bloch_vector(const DensityMatrix& rho_logical);

/// Earliest sample time t_o with |C(t) - c_infinity| / c_infinity <= 1e-3
/// holding at t_o and at every later sample; the absolute criterion
/// |C - c_infinity| <= 1e-6 replaces the relative one when
/// c_infinity < 1e-6. Throws NotStabilized when the last sample is still
/// outside the band.
double stabilization_time(std::span<const std::pair<double, double>> series,
                          double c_infinity);

}  // namespace qubot::metrics

#endif  // QUBOT_METRICS_HPP_
