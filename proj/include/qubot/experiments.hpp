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

#ifndef QUBOT_EXPERIMENTS_HPP_
#define QUBOT_EXPERIMENTS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qubot/channels.hpp"
#include "qubot/dynamics.hpp"
#include "qubot/metrics.hpp"

namespace qubot::experiments {

using channels::ModelParams;
using metrics::EntropyBase;
using metrics::FidelityConvention;

/// Time series pair: the protected model plus its unprotected dim-2
/// baseline.
struct TransientResult {
  std::vector<metrics::MetricSample> qubot;
  std::vector<std::pair<double, double>> free_spin;  // (time, concurrence)
};

/// Transient metrics from the canonical start state (singlet (x) loop
/// ground): per sample C(AB) via loop trace + two-spin embedding, S(AB),
/// S(L), F; the baseline is the same environment acting on a bare logical
/// pair.
TransientResult run_transient(const ModelParams& params, double t_end,
                              double sample_dt,
                              EntropyBase entropy_base = EntropyBase::kNats,
                              FidelityConvention fidelity_convention =
                                  FidelityConvention::kOverlap);

/// One stabilization-time curve: t_o against the forgetness rate at fixed
/// dephasing rate. Points that fail to stabilize before the internal time
/// cap stay empty.
struct StabilizationCurve {
  double gamma_dephasing = 0.0;
  std::vector<double> gamma_forget;
  std::vector<std::optional<double>> t_o;
};

/// For each (dephasing, forgetness) pair: steady concurrence from the
/// null-space solve, trajectory from the canonical start, onset time from
/// stabilization_time. The trajectory is extended in doubling chunks up to
/// t = 400 before a point is declared missing.
std::vector<StabilizationCurve> run_stabilization_sweep(
    std::span<const double> gamma_dephasing_values,
    std::span<const double> gamma_forget_range, double correction_time,
    double sample_dt = 0.01, const ModelParams& base = ModelParams{},
    unsigned threads = 0);

struct SweepRecord {
  double concurrence_ss = 0.0;
  double entropy_ab_ss = 0.0;
  double entropy_loop_ss = 0.0;
  double fidelity_ss = 0.0;
  bool degenerate = false;  // values are NaN when set
};

/// Long-format steady-state grid, row-major over
/// (gamma_dephasing_grid x gamma_forget_grid).
struct SweepResult {
  std::vector<double> gamma_dephasing_grid;
  std::vector<double> gamma_forget_grid;
  std::vector<SweepRecord> records;

  const SweepRecord& at(std::size_t i_dephasing, std::size_t i_forget) const {
    return records[i_dephasing * gamma_forget_grid.size() + i_forget];
  }
};

SweepResult run_steady_sweep(std::span<const double> gamma_dephasing_grid,
                             std::span<const double> gamma_forget_grid,
                             double correction_time,
                             const ModelParams& base = ModelParams{},
                             EntropyBase entropy_base = EntropyBase::kNats,
                             FidelityConvention fidelity_convention =
                                 FidelityConvention::kOverlap,
                             unsigned threads = 0);

struct BlochSnapshot {
  double time = 0.0;
  std::vector<metrics::BlochVector> points;
};

/// Quasi-uniform point on the sphere, as polar angles.
struct SpherePoint {
  double theta = 0.0;
  double phi = 0.0;
};

/// Deterministic golden-spiral sampling of n points on the unit sphere.
std::vector<SpherePoint> golden_spiral_points(std::size_t n);

/// Evolves n_points pure logical states (each tensored with the loop ground
/// state) and records the loop-traced Bloch vector at each snapshot time.
std::vector<BlochSnapshot> run_bloch_evolution(
    const ModelParams& params, std::span<const double> snapshot_times,
    std::size_t n_points, unsigned threads = 0);

/// Singlet-fidelity decay curves under the photodissociation environment:
/// protected model vs the bare pair.
struct PhotoResult {
  std::vector<std::pair<double, double>> qubot;      // (time, fidelity)
  std::vector<std::pair<double, double>> free_spin;  // (time, fidelity)
};

PhotoResult run_photodissociation(const ModelParams& params, double t_end,
                                  double sample_dt,
                                  FidelityConvention fidelity_convention =
                                      FidelityConvention::kOverlap);

}  // namespace qubot::experiments

#endif  // QUBOT_EXPERIMENTS_HPP_
