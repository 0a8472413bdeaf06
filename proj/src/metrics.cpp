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

#include "qubot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qubot/errors.hpp"
#include "qubot/linalg.hpp"

namespace qubot::metrics {

using linalg::Complex;
using linalg::ComplexMatrix;

namespace {

constexpr double kRangeTol = 1e-8;
constexpr double kEntropyEigFloor = 1e-12;
constexpr double kRelBand = 1e-3;
constexpr double kAbsBand = 1e-6;

void require_range(const char* name, double v) {
  if (!(v >= -kRangeTol && v <= 1.0 + kRangeTol)) {
    throw InvariantViolatedError(std::string(name) + " outside [0, 1]");
  }
}

const ComplexMatrix& spin_flip_matrix() {
  // sigma_y (x) sigma_y; real entries only.
  static const ComplexMatrix m = [] {
    const ComplexMatrix sy = ComplexMatrix::from_rows(
        {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}});
    return linalg::kron(sy, sy);
  }();
  return m;
}

}  // namespace

void MetricSample::validate() const {
  require_range("concurrence_ab", concurrence_ab);
  require_range("entropy_ab", entropy_ab);
  require_range("entropy_loop", entropy_loop);
  require_range("fidelity_singlet", fidelity_singlet);
}

double concurrence(const DensityMatrix& rho_two_spin) {
  if (rho_two_spin.dim() == 2) {
    return concurrence(hilbert::embed_logical_to_two_spin(rho_two_spin));
  }
  if (rho_two_spin.dim() != 4) {
    throw DimensionMismatchError("concurrence expects a dim-4 two-spin state");
  }
  const ComplexMatrix& rho = rho_two_spin.matrix();
  const ComplexMatrix& flip = spin_flip_matrix();
  const ComplexMatrix rho_tilde = flip * rho.conjugate() * flip;
  const ComplexMatrix root = linalg::psd_sqrt(rho);
  ComplexMatrix m = root * rho_tilde * root;
  // m is Hermitian PSD up to roundoff; scrub the defect before eig.
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  const auto eig = linalg::hermitian_eig(m);
  // Eigenvalues come back ascending; Wootters wants decreasing square roots.
  double c = 0.0;
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
    const double l = std::sqrt(std::max(eig.eigenvalues[i], 0.0));
    c += (i + 1 == eig.eigenvalues.size()) ? l : -l;
  }
  return std::max(0.0, c);
}

double von_neumann_entropy(const DensityMatrix& rho, EntropyBase base) {
  const auto eig = linalg::hermitian_eig(rho.matrix());
  double s = 0.0;
  for (double lambda : eig.eigenvalues) {
    if (lambda < kEntropyEigFloor) continue;
    s -= lambda * std::log(lambda);
  }
  if (base == EntropyBase::kBits) s /= std::numbers::ln2;
  return s;
}

SingletFidelity fidelity_to_singlet(const DensityMatrix& rho_logical) {
  if (rho_logical.dim() != 2) {
    throw DimensionMismatchError("fidelity expects a dim-2 logical state");
  }
  const ComplexMatrix& rho = rho_logical.matrix();
  // <s|rho|s> with |s> = (|0> - |1>)/sqrt(2).
  const double overlap =
      0.5 * (rho(0, 0) + rho(1, 1) - rho(0, 1) - rho(1, 0)).real();
  SingletFidelity f;
  f.overlap = overlap;
  f.sqrt_overlap = std::sqrt(std::max(overlap, 0.0));
  return f;
}

double fidelity_value(const SingletFidelity& f,
                      FidelityConvention convention) {
  return convention == FidelityConvention::kOverlap ? f.overlap
                                                    : f.sqrt_overlap;
}

BlochVector bloch_vector(const DensityMatrix& rho_logical) {
  if (rho_logical.dim() != 2) {
    throw DimensionMismatchError("bloch vector expects a dim-2 state");
  }
  const ComplexMatrix& rho = rho_logical.matrix();
  BlochVector b;
  b.x = 2.0 * rho(0, 1).real();
  b.y = -2.0 * rho(0, 1).imag();
  b.z = (rho(0, 0) - rho(1, 1)).real();
  return b;
}

double stabilization_time(std::span<const std::pair<double, double>> series,
                          double c_infinity) {
  if (series.empty()) {
    throw NotStabilizedError("empty concurrence series");
  }
  const bool relative = c_infinity >= kAbsBand;
  auto in_band = [&](double c) {
    return relative ? std::abs(c - c_infinity) / c_infinity <= kRelBand
                    : std::abs(c - c_infinity) <= kAbsBand;
  };
  // Walk backwards to the last sample outside the band; the onset is the
  // next one.
  std::size_t last_bad = series.size();
  for (std::size_t i = series.size(); i-- > 0;) {
    if (!in_band(series[i].second)) {
      last_bad = i;
      break;
    }
  }
  if (last_bad == series.size()) return series.front().first;
  if (last_bad + 1 == series.size()) {
    throw NotStabilizedError("series never settles into the band");
  }
  return series[last_bad + 1].first;
}

}  // namespace qubot::metrics
