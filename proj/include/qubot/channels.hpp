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

#ifndef QUBOT_CHANNELS_HPP_
#define QUBOT_CHANNELS_HPP_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "qubot/hilbert.hpp"
#include "qubot/linalg.hpp"

namespace qubot::channels {

using hilbert::DensityMatrix;
using linalg::Complex;
using linalg::ComplexMatrix;

enum class Environment { kDephasing, kPhotodissociation };

/// Model parameters. All rates are expressed in units of the loop gap delta,
/// all times in units of 1/delta; delta itself is the numeraire and defaults
/// to 1.
struct ModelParams {
  double gamma_dephasing = 1.0;   // environment coupling rate
  double gamma_forget = 1.5;      // loop relaxation (forgetness) rate
  double correction_time = 0.0;   // duration of the recovery step
  double delta = 1.0;             // loop level splitting
  Environment environment = Environment::kDephasing;

  /// Effective recovery rate r = 1 / (correction_time + 1/gamma_forget).
  double recovery() const;

  /// Conservative rate scale gamma_dephasing + gamma_forget + r + delta used
  /// to pick integration steps.
  double rate_scale() const;

  /// Throws ValidationError naming the offending field for negative rates,
  /// non-positive delta or negative correction time.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

/// A Lindblad jump operator with a short label for diagnostics.
struct JumpOperator {
  ComplexMatrix matrix;
  std::string label;
};

/// H = 1 (x) (delta/2) sigma_z on the loop, expressed in the composite dim-4
/// space. The logical pair carries no free Hamiltonian.
ComplexMatrix loop_hamiltonian(double delta);

/// Dephasing pair D0 = sqrt(Gamma) |0><0| (x) 1, D1 = sqrt(Gamma) |1><1| (x) 1.
std::array<JumpOperator, 2> dephasing_jumps(double gamma_dephasing);

/// Recovery pair R0 = sqrt(r) |s><s| (x) 1, R1 = sqrt(r) |s><t| (x) X with
/// X the loop bit flip. R0 records "already corrected", R1 corrects a triplet
/// component and flips the loop.
std::array<JumpOperator, 2> recovery_jumps(double recovery_rate);

/// Forgetness F = sqrt(gamma) 1 (x) |Phi0><Phi1|, relaxing the loop.
JumpOperator forgetness_jump(double gamma_forget);

/// Photodissociation P = sqrt(Gamma) |t><s| (x) 1, an alternative environment
/// that maps the singlet onto the triplet.
JumpOperator photodissociation_jump(double gamma_dephasing);

/// r = 1 / (t_c + 1/gamma); throws ZeroForgetness when gamma <= 0.
double recovery_rate(double correction_time, double gamma_forget);

/// Right-hand side of the master equation in matrix form:
///   -i[h, rho] + sum_a (L_a rho L_a^dag - 1/2 {L_a^dag L_a, rho}).
ComplexMatrix lindblad_rhs(const ComplexMatrix& h,
                           std::span<const JumpOperator> jumps,
                           const ComplexMatrix& rho);

/// One discrete error-correction round on the logical space: with
/// probability p the dephasing projection is applied, else identity.
/// Input must be a dim-2 state; p in [0, 1] else InvalidProbability.
DensityMatrix discrete_dephasing(const DensityMatrix& rho, double p);

/// Full jump set for the composite dim-4 model under params.environment:
/// dephasing (or photodissociation) + recovery pair + forgetness.
std::vector<JumpOperator> model_jumps(const ModelParams& params);

/// Dim-2 unprotected baseline: the bare environment acting on a single
/// logical pair, no recovery, no loop.
std::vector<JumpOperator> free_spin_jumps(const ModelParams& params);

struct OperatingPointFinding {
  bool satisfied = false;
  bool marginal = false;  // the two sides compare equal
  double margin = 0.0;    // positive when satisfied with room to spare
};

/// Qualitative operating-point report:
///   protective:         gamma_forget >  5 * gamma_dephasing  (strict)
///   feasible_gap:       delta        >= 5 * gamma_dephasing
///   forgetness_bounded: gamma_forget <= delta
/// Margins are the signed slack of each inequality; equality cases are
/// flagged marginal.
struct OperatingPointReport {
  OperatingPointFinding protective;
  OperatingPointFinding feasible_gap;
  OperatingPointFinding forgetness_bounded;
};

OperatingPointReport validate_operating_point(const ModelParams& params);

}  // namespace qubot::channels

#endif  // QUBOT_CHANNELS_HPP_
