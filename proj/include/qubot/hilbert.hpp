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

#ifndef QUBOT_HILBERT_HPP_
#define QUBOT_HILBERT_HPP_

#include <cstddef>
#include <vector>

#include "qubot/linalg.hpp"

namespace qubot::hilbert {

using linalg::Complex;
using linalg::ComplexMatrix;

// Basis conventions used throughout:
//   logical space  (dim 2): |0> = up-down, |1> = down-up
//   loop space     (dim 2): |Phi0> ground, |Phi1> excited
//   composite      (dim 4): index = i_logical * 2 + i_loop
//                           -> {|0,Phi0>, |0,Phi1>, |1,Phi0>, |1,Phi1>}
//   two-spin space (dim 4): {|uu>, |ud>, |du>, |dd>}; the logical block
//                           occupies indices 1 and 2.

/// Square density matrix with validated invariants: unit trace (1e-8),
/// hermiticity defect <= 1e-10, minimum eigenvalue >= -1e-8.
class DensityMatrix {
 public:
  static constexpr double kTraceTol = 1e-8;
  static constexpr double kHermTol = 1e-10;
  static constexpr double kEigFloor = -1e-8;

  /// Validates all invariants; throws InvariantViolated on failure.
  static DensityMatrix checked(ComplexMatrix m);
  /// Wraps without validation. For internal hot paths only; callers own
  /// correctness.
  static DensityMatrix unchecked(ComplexMatrix m);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return m_(i, j);
  }

  bool operator==(const DensityMatrix& other) const = default;

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

enum class Subsystem { kSpins, kLoop };

// Logical-space kets (dim 2 column vectors).
std::vector<Complex> ket_zero();     // |0>
std::vector<Complex> ket_one();      // |1>
std::vector<Complex> ket_singlet();  // (|0> - |1>)/sqrt(2)
std::vector<Complex> ket_triplet();  // (|0> + |1>)/sqrt(2)

// Loop-space kets (dim 2 column vectors).
std::vector<Complex> ket_loop_ground();
std::vector<Complex> ket_loop_excited();

/// Pure singlet state on the logical space (dim 2).
DensityMatrix singlet_state();

/// Pure logical state on the Bloch sphere: cos(theta/2)|0> +
/// e^{i phi} sin(theta/2)|1>. Input angles theta in [0, pi], phi in [0, 2 pi).
DensityMatrix bloch_state(double theta, double phi);

/// Composite start state: singlet on the logical pair, loop in its ground
/// state (dim 4).
DensityMatrix initial_qubot_state();

/// Traces out the complement of `keep` on a dim-4 composite state.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// Embeds a dim-2 logical state into the dim-4 two-spin space; the block
/// lands on indices {1, 2} (|ud>, |du>), all other entries are zero.
DensityMatrix embed_logical_to_two_spin(const DensityMatrix& rho_logical);

}  // namespace qubot::hilbert

#endif  // QUBOT_HILBERT_HPP_
