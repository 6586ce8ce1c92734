/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MMESIM_TRAJ_HPP
#define MMESIM_TRAJ_HPP

#include <cstdint>
#include <vector>

#include "mmesim/qops.hpp"
#include "mmesim/twolevel.hpp"

namespace mmesim {

// How measurement times are placed on the time axis.
//   binned:       walk fixed bins of width dt; each bin is a measurement
//                 with probability rate * dt, otherwise free evolution.
//   event_driven: draw exponential inter-measurement gaps directly and
//                 evolve exactly between events (no time-step error).
enum class Scheme { binned, event_driven };

struct TrajectoryConfig {
  Scheme scheme = Scheme::event_driven;
  double dt = 1e-3;              // bin width; unused by event_driven
  double t_final = 0.0;
  double sample_interval = 0.01; // spacing of recorded Bloch samples
  std::uint64_t seed = 0;
};

struct MeasurementEvent {
  double time = 0.0;
  int outcome = 0;       // 1-based outcome label
  double w_before = 0.0; // inversion just before the collapse
  double w_after = 0.0;  // inversion just after
  double gap = 0.0;      // time since the previous measurement
};

struct SamplePoint {
  double time = 0.0;
  BlochVector bloch;
};

struct TrajectoryRecord {
  std::vector<SamplePoint> samples; // uniform grid, sample_interval apart
  std::vector<MeasurementEvent> events;
  TrajectoryConfig config;
  StateVector final_state;
  double max_norm_error = 0.0; // worst |  |psi| - 1 | seen at samples
};

// Exact free evolution exp(+i omega tau s1 / 2)|s>, the propagator of the
// drive Hamiltonian.
StateVector unitary_step(const StateVector& s, double omega, double tau);

// Single pure-state trajectory: free evolution interrupted by measurement
// collapses, outcomes drawn from the two-outcome probabilities.  Fully
// reproducible from config.seed.
TrajectoryRecord run_trajectory(const AtomParams& params,
                                const StateVector& s0,
                                const TrajectoryConfig& cfg);

// n independent trajectories with per-trajectory seeds derived from
// cfg.seed by counter; the result is independent of the thread schedule
// (threads = 0 picks a hardware-based default).
std::vector<TrajectoryRecord> run_ensemble(const AtomParams& params,
                                           const StateVector& s0,
                                           const TrajectoryConfig& cfg,
                                           int n, unsigned threads = 0);

// Counter-based per-trajectory seed stream (random access, collision-free
// in the index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

} // namespace mmesim

#endif
