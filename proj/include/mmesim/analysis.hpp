/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MMESIM_ANALYSIS_HPP
#define MMESIM_ANALYSIS_HPP

#include <vector>

#include "mmesim/qops.hpp"
#include "mmesim/traj.hpp"

namespace mmesim {

struct BlochSeriesPoint {
  double time = 0.0;
  BlochVector mean;
  BlochVector se; // standard error of the mean, per component
};

// Pointwise ensemble mean with standard errors.  All records must share the
// same sample grid; a single record is returned unchanged with zero errors.
std::vector<BlochSeriesPoint>
ensemble_mean_bloch(const std::vector<TrajectoryRecord>& records);

// Pure state after a recorded outcome sequence, with the probability of
// observing exactly that sequence.
struct SequenceState {
  Complex alpha;      // |1> amplitude
  Complex beta;       // |2> amplitude
  double probability; // squared norm of the unnormalized sequence state
};

// Apply the two-outcome operation elements for the given 1-based outcome
// labels in order (no evolution between), starting from alpha|1> + beta|2>.
SequenceState sequence_state(Complex alpha, Complex beta, double p,
                             const std::vector<int>& outcomes);

// Small-epsilon odds of repeating outcome 1 versus reverting to outcome 2
// after a first outcome 1 on sqrt(1-eps^2)|2> + eps|1>: (eps^2 + p^2) / p.
double mini_jump_ratio(double epsilon, double p);

// Probability that a single outcome-1 event interrupts the early Rabi state
// sqrt(1-eps^2)|2> + eps|1> under sharp measurements: eps^2.
double zeno_jump_probability(double epsilon);

struct Jump {
  double time = 0.0;
  int direction = 0; // +1 landing in the upper band, -1 in the lower
};

// Excursion that leaves a band and returns to the same band without
// reaching the opposite one.
struct Filament {
  double start = 0.0;
  double end = 0.0;
  double extremal_w = 0.0; // farthest w reached during the excursion
};

struct JumpReport {
  std::vector<Jump> jumps;
  std::vector<double> dwell_times; // contiguous time spent inside one band
  std::vector<Filament> filaments;
  double duration = 0.0; // time span of the analyzed record

  double jump_rate() const;
  double filament_rate() const;
  double mean_dwell() const;
};

// Classify an inversion series against the bands w >= 1 - band and
// w <= -1 + band: transitions between opposite bands are jumps, excursions
// that return to the starting band are filaments.
JumpReport detect_jumps(const std::vector<SamplePoint>& samples, double band);
JumpReport detect_jumps(const TrajectoryRecord& record, double band = 0.1);

} // namespace mmesim

#endif
