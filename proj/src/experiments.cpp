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

#include "qubot/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "qubot/errors.hpp"
#include "qubot/hilbert.hpp"

namespace qubot::experiments {

using hilbert::DensityMatrix;
using hilbert::Subsystem;
using linalg::Complex;
using linalg::ComplexMatrix;

namespace {

constexpr double kStabilizationTimeCap = 400.0;

/// Runs fn(i) for i in [0, n) across up to `threads` workers (0 = hardware
/// concurrency). Work items are independent and write only to their own
/// result slot, so scheduling cannot affect values. The first exception, if
/// any, is rethrown on the calling thread.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  unsigned workers = threads == 0 ? std::thread::hardware_concurrency()
                                  : threads;
  workers = std::max(1u, std::min<unsigned>(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex mu;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

double free_spin_rate_scale(const ModelParams& params) {
  return params.gamma_dephasing + params.delta;
}

/// Concurrence of the loop-traced logical state, via the two-spin embedding.
double logical_concurrence(const DensityMatrix& composite) {
  const auto spins = hilbert::partial_trace(composite, Subsystem::kSpins);
  return metrics::concurrence(hilbert::embed_logical_to_two_spin(spins));
}

}  // namespace

TransientResult run_transient(const ModelParams& params, double t_end,
                              double sample_dt, EntropyBase entropy_base,
                              FidelityConvention fidelity_convention) {
  params.validate();
  TransientResult result;

  const auto traj =
      dynamics::evolve(hilbert::initial_qubot_state(), params, t_end,
                       sample_dt);
  result.qubot.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& state = traj.states[i];
    const auto spins = hilbert::partial_trace(state, Subsystem::kSpins);
    const auto loop = hilbert::partial_trace(state, Subsystem::kLoop);
    metrics::MetricSample sample;
    sample.time = traj.times[i];
    sample.concurrence_ab =
        metrics::concurrence(hilbert::embed_logical_to_two_spin(spins));
    sample.entropy_ab = metrics::von_neumann_entropy(spins, entropy_base);
    sample.entropy_loop = metrics::von_neumann_entropy(loop, entropy_base);
    sample.fidelity_singlet = metrics::fidelity_value(
        metrics::fidelity_to_singlet(spins), fidelity_convention);
    sample.validate();
    result.qubot.push_back(sample);
  }

  const auto free_jumps = channels::free_spin_jumps(params);
  const auto free_traj = dynamics::evolve(
      hilbert::singlet_state(), ComplexMatrix(2, 2), free_jumps,
      free_spin_rate_scale(params), t_end, sample_dt);
  result.free_spin.reserve(free_traj.times.size());
  for (std::size_t i = 0; i < free_traj.times.size(); ++i) {
    result.free_spin.emplace_back(
        free_traj.times[i],
        metrics::concurrence(
            hilbert::embed_logical_to_two_spin(free_traj.states[i])));
  }
  return result;
}

std::vector<StabilizationCurve> run_stabilization_sweep(
    std::span<const double> gamma_dephasing_values,
    std::span<const double> gamma_forget_range, double correction_time,
    double sample_dt, const ModelParams& base, unsigned threads) {
  for (double g : gamma_forget_range) {
    if (!(g > 0.0)) {
      throw ValidationError("gamma_forget", "sweep values must be > 0");
    }
  }
  if (!(sample_dt > 0.0)) {
    throw ValidationError("sample_dt", "must be > 0");
  }

  const std::size_t n_curves = gamma_dephasing_values.size();
  const std::size_t n_gamma = gamma_forget_range.size();
  std::vector<StabilizationCurve> curves(n_curves);
  for (std::size_t c = 0; c < n_curves; ++c) {
    curves[c].gamma_dephasing = gamma_dephasing_values[c];
    curves[c].gamma_forget.assign(gamma_forget_range.begin(),
                                  gamma_forget_range.end());
    curves[c].t_o.assign(n_gamma, std::nullopt);
  }

  parallel_for(n_curves * n_gamma, threads, [&](std::size_t idx) {
    const std::size_t c = idx / n_gamma;
    const std::size_t g = idx % n_gamma;
    ModelParams params = base;
    params.gamma_dephasing = gamma_dephasing_values[c];
    params.gamma_forget = gamma_forget_range[g];
    params.correction_time = correction_time;
    params.validate();

    const auto model_jumps = channels::model_jumps(params);
    const auto hamiltonian = channels::loop_hamiltonian(params.delta);
    const auto liou = dynamics::build_liouvillian(hamiltonian, model_jumps);
    const double c_infinity = logical_concurrence(
        dynamics::steady_state_nullspace(liou));

    // Integrate in doubling chunks until the onset criterion can be
    // certified or the cap is reached.
    std::vector<std::pair<double, double>> series;
    std::vector<Complex> v =
        dynamics::vectorize(hilbert::initial_qubot_state().matrix());
    const std::size_t steps_per_sample = static_cast<std::size_t>(std::max(
        1.0, std::ceil(sample_dt * params.rate_scale() / 0.01)));
    const double h = sample_dt / static_cast<double>(steps_per_sample);

    series.emplace_back(
        0.0, logical_concurrence(hilbert::initial_qubot_state()));
    double t_reached = 0.0;
    double chunk_end = 25.0;
    std::size_t k = 0;  // sample counter
    while (true) {
      while (t_reached < chunk_end - 0.5 * sample_dt) {
        dynamics::rk4_steps(liou, v, h, steps_per_sample);
        ++k;
        t_reached = static_cast<double>(k) * sample_dt;
        series.emplace_back(
            t_reached,
            logical_concurrence(hilbert::DensityMatrix::checked(
                dynamics::devectorize(v, liou.dim))));
      }
      try {
        curves[c].t_o[g] = metrics::stabilization_time(series, c_infinity);
        break;
      } catch (const NotStabilizedError&) {
        if (chunk_end >= kStabilizationTimeCap) break;  // missing point
        chunk_end = std::min(2.0 * chunk_end, kStabilizationTimeCap);
      }
    }
  });
  return curves;
}

SweepResult run_steady_sweep(std::span<const double> gamma_dephasing_grid,
                             std::span<const double> gamma_forget_grid,
                             double correction_time, const ModelParams& base,
                             EntropyBase entropy_base,
                             FidelityConvention fidelity_convention,
                             unsigned threads) {
  if (gamma_dephasing_grid.empty() || gamma_forget_grid.empty()) {
    throw ValidationError("sweep", "grids must be non-empty");
  }
  SweepResult result;
  result.gamma_dephasing_grid.assign(gamma_dephasing_grid.begin(),
                                     gamma_dephasing_grid.end());
  result.gamma_forget_grid.assign(gamma_forget_grid.begin(),
                                  gamma_forget_grid.end());
  result.records.resize(gamma_dephasing_grid.size() *
                        gamma_forget_grid.size());

  parallel_for(result.records.size(), threads, [&](std::size_t idx) {
    const std::size_t ig = idx / gamma_forget_grid.size();
    const std::size_t jg = idx % gamma_forget_grid.size();
    ModelParams params = base;
    params.gamma_dephasing = gamma_dephasing_grid[ig];
    params.gamma_forget = gamma_forget_grid[jg];
    params.correction_time = correction_time;
    params.validate();

    SweepRecord record;
    try {
      const auto liou = dynamics::build_liouvillian(
          channels::loop_hamiltonian(params.delta),
          channels::model_jumps(params));
      const auto steady = dynamics::steady_state_nullspace(liou);
      const auto spins = hilbert::partial_trace(steady, Subsystem::kSpins);
      const auto loop = hilbert::partial_trace(steady, Subsystem::kLoop);
      record.concurrence_ss =
          metrics::concurrence(hilbert::embed_logical_to_two_spin(spins));
      record.entropy_ab_ss =
          metrics::von_neumann_entropy(spins, entropy_base);
      record.entropy_loop_ss =
          metrics::von_neumann_entropy(loop, entropy_base);
      record.fidelity_ss = metrics::fidelity_value(
          metrics::fidelity_to_singlet(spins), fidelity_convention);
    } catch (const DegenerateSteadyStateError&) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      record = SweepRecord{nan, nan, nan, nan, true};
    }
    result.records[idx] = record;
  });
  return result;
}

std::vector<SpherePoint> golden_spiral_points(std::size_t n) {
  // i-th point: z descends uniformly through (1, -1), azimuth advances by
  // the golden angle.
  std::vector<SpherePoint> points(n);
  const double golden_angle =
      std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z =
        1.0 - (2.0 * (static_cast<double>(i) + 0.5)) / static_cast<double>(n);
    points[i].theta = std::acos(std::clamp(z, -1.0, 1.0));
    points[i].phi =
        std::fmod(golden_angle * static_cast<double>(i), 2.0 * std::numbers::pi);
  }
  return points;
}

std::vector<BlochSnapshot> run_bloch_evolution(
    const ModelParams& params, std::span<const double> snapshot_times,
    std::size_t n_points, unsigned threads) {
  params.validate();
  if (snapshot_times.empty()) {
    throw ValidationError("snapshot_times", "must be non-empty");
  }
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    if (snapshot_times[i] < 0.0 ||
        (i > 0 && snapshot_times[i] <= snapshot_times[i - 1])) {
      throw ValidationError("snapshot_times",
                            "must be non-negative and ascending");
    }
  }

  const auto liou = dynamics::build_liouvillian(
      channels::loop_hamiltonian(params.delta), channels::model_jumps(params));
  const double rate_scale = params.rate_scale();
  const auto sphere = golden_spiral_points(n_points);
  const auto ground = hilbert::ket_loop_ground();
  const ComplexMatrix loop_ground = linalg::outer(ground, ground);

  std::vector<BlochSnapshot> snapshots(snapshot_times.size());
  for (std::size_t s = 0; s < snapshot_times.size(); ++s) {
    snapshots[s].time = snapshot_times[s];
    snapshots[s].points.resize(n_points);
  }

  parallel_for(n_points, threads, [&](std::size_t p) {
    const auto logical = hilbert::bloch_state(sphere[p].theta, sphere[p].phi);
    std::vector<Complex> v = dynamics::vectorize(
        linalg::kron(logical.matrix(), loop_ground));
    double t = 0.0;
    for (std::size_t s = 0; s < snapshot_times.size(); ++s) {
      const double segment = snapshot_times[s] - t;
      if (segment > 0.0) {
        const auto steps = static_cast<std::size_t>(
            std::max(1.0, std::ceil(segment * rate_scale / 0.01)));
        dynamics::rk4_steps(liou, v, segment / static_cast<double>(steps),
                            steps);
        t = snapshot_times[s];
      }
      const auto state = hilbert::DensityMatrix::checked(
          dynamics::devectorize(v, liou.dim));
      snapshots[s].points[p] = metrics::bloch_vector(
          hilbert::partial_trace(state, Subsystem::kSpins));
    }
  });
  return snapshots;
}

PhotoResult run_photodissociation(const ModelParams& params, double t_end,
                                  double sample_dt,
                                  FidelityConvention fidelity_convention) {
  if (params.environment != channels::Environment::kPhotodissociation) {
    throw ValidationError("environment",
                          "photodissociation scenario requires "
                          "environment = photodissociation");
  }
  params.validate();
  PhotoResult result;

  const auto traj =
      dynamics::evolve(hilbert::initial_qubot_state(), params, t_end,
                       sample_dt);
  result.qubot.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto spins =
        hilbert::partial_trace(traj.states[i], Subsystem::kSpins);
    result.qubot.emplace_back(
        traj.times[i], metrics::fidelity_value(
                           metrics::fidelity_to_singlet(spins),
                           fidelity_convention));
  }

  const auto free_jumps = channels::free_spin_jumps(params);
  const auto free_traj = dynamics::evolve(
      hilbert::singlet_state(), ComplexMatrix(2, 2), free_jumps,
      free_spin_rate_scale(params), t_end, sample_dt);
  result.free_spin.reserve(free_traj.times.size());
  for (std::size_t i = 0; i < free_traj.times.size(); ++i) {
    result.free_spin.emplace_back(
        free_traj.times[i],
        metrics::fidelity_value(
            metrics::fidelity_to_singlet(free_traj.states[i]),
            fidelity_convention));
  }
  return result;
}

}  // namespace qubot::experiments
