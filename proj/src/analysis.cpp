/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mmesim/analysis.hpp"

#include <cmath>
#include <string>

namespace mmesim {

namespace {

constexpr double kZeroProb = 1e-28;

} // namespace

std::vector<BlochSeriesPoint>
ensemble_mean_bloch(const std::vector<TrajectoryRecord>& records) {
  if (records.empty()) {
    throw ArgumentError("ensemble_mean_bloch: no records");
  }
  const auto& grid = records.front().samples;
  for (const auto& rec : records) {
    if (rec.samples.size() != grid.size()) {
      throw ArgumentError("ensemble_mean_bloch: records have different "
                          "sample grids");
    }
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (std::abs(rec.samples[j].time - grid[j].time) > 1e-12) {
        throw ArgumentError("ensemble_mean_bloch: sample times differ at "
                            "index " + std::to_string(j));
      }
    }
  }

  const auto n = static_cast<double>(records.size());
  std::vector<BlochSeriesPoint> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double su = 0.0;
    double sv = 0.0;
    double sw = 0.0;
    for (const auto& rec : records) {
      su += rec.samples[j].bloch.u;
      sv += rec.samples[j].bloch.v;
      sw += rec.samples[j].bloch.w;
    }
    BlochSeriesPoint pt;
    pt.time = grid[j].time;
    pt.mean = {su / n, sv / n, sw / n};
    if (records.size() > 1) {
      double qu = 0.0;
      double qv = 0.0;
      double qw = 0.0;
      for (const auto& rec : records) {
        const auto& b = rec.samples[j].bloch;
        qu += (b.u - pt.mean.u) * (b.u - pt.mean.u);
        qv += (b.v - pt.mean.v) * (b.v - pt.mean.v);
        qw += (b.w - pt.mean.w) * (b.w - pt.mean.w);
      }
      const double scale = 1.0 / (n * (n - 1.0));
      pt.se = {std::sqrt(qu * scale), std::sqrt(qv * scale),
               std::sqrt(qw * scale)};
    }
    out[j] = pt;
  }
  return out;
}

SequenceState sequence_state(Complex alpha, Complex beta, double p,
                             const std::vector<int>& outcomes) {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > 1e-12) {
    throw ArgumentError("sequence_state: input state is not normalized");
  }
  if (!(p >= 0.0 && p <= 0.5)) {
    throw ArgumentError("sequence_state: p must lie in [0, 1/2]");
  }
  if (outcomes.empty()) {
    throw ArgumentError("sequence_state: outcome list is empty");
  }
  const double sp = std::sqrt(p);
  const double sq = std::sqrt(1.0 - p);
  Complex a = alpha;
  Complex b = beta;
  for (const int outcome : outcomes) {
    if (outcome == 1) {
      a *= sq;
      b *= sp;
    } else if (outcome == 2) {
      a *= sp;
      b *= sq;
    } else {
      throw ArgumentError("sequence_state: outcome labels must be 1 or 2");
    }
  }
  const double prob = std::norm(a) + std::norm(b);
  if (prob < kZeroProb) {
    throw ImpossibleOutcomeError("sequence_state: sequence has zero "
                                 "probability");
  }
  const double norm = std::sqrt(prob);
  return {a / norm, b / norm, prob};
}

double mini_jump_ratio(double epsilon, double p) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ArgumentError("mini_jump_ratio: epsilon must lie in [0, 1]");
  }
  if (!(p > 0.0 && p <= 0.5)) {
    throw ArgumentError("mini_jump_ratio: ratio undefined unless p is in "
                        "(0, 1/2]");
  }
  return (epsilon * epsilon + p * p) / p;
}

double zeno_jump_probability(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ArgumentError("zeno_jump_probability: epsilon must lie in [0, 1]");
  }
  return epsilon * epsilon;
}

double JumpReport::jump_rate() const {
  return duration > 0.0 ? static_cast<double>(jumps.size()) / duration : 0.0;
}

double JumpReport::filament_rate() const {
  return duration > 0.0 ? static_cast<double>(filaments.size()) / duration
                        : 0.0;
}

double JumpReport::mean_dwell() const {
  if (dwell_times.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (const double d : dwell_times) {
    sum += d;
  }
  return sum / static_cast<double>(dwell_times.size());
}

JumpReport detect_jumps(const std::vector<SamplePoint>& samples,
                        double band) {
  if (!(band > 0.0 && band < 1.0)) {
    throw ArgumentError("detect_jumps: band must lie in (0, 1)");
  }
  JumpReport report;
  if (samples.empty()) {
    return report;
  }
  report.duration = samples.back().time - samples.front().time;

  const double upper = 1.0 - band;
  const double lower = -1.0 + band;
  auto zone = [upper, lower](double w) {
    if (w >= upper) {
      return +1;
    }
    if (w <= lower) {
      return -1;
    }
    return 0;
  };

  // Maximal in-band runs; what lies between two runs decides whether the
  // gap was a filament (same band) or a jump (opposite band).
  int run_band = 0;
  double run_start = 0.0;
  double run_end = 0.0;
  bool have_prev_run = false;
  int prev_band = 0;
  double prev_end = 0.0;
  bool gap_has_middle = false;
  double gap_extremal = 0.0;

  auto close_run = [&]() {
    report.dwell_times.push_back(run_end - run_start);
    have_prev_run = true;
    prev_band = run_band;
    prev_end = run_end;
    run_band = 0;
  };

  for (const auto& s : samples) {
    const int z = zone(s.bloch.w);
    if (z == 0) {
      if (run_band != 0) {
        close_run();
        gap_has_middle = true;
        gap_extremal = s.bloch.w;
      } else if (have_prev_run) {
        if (!gap_has_middle) {
          gap_has_middle = true;
          gap_extremal = s.bloch.w;
        } else if (prev_band > 0 ? s.bloch.w < gap_extremal
                                 : s.bloch.w > gap_extremal) {
          gap_extremal = s.bloch.w;
        }
      }
      continue;
    }
    if (run_band == z) {
      run_end = s.time;
      continue;
    }
    if (run_band != 0) {
      // Adjacent samples in opposite bands: a jump with no middle samples.
      close_run();
      gap_has_middle = false;
    }
    if (have_prev_run) {
      if (z == prev_band && gap_has_middle) {
        report.filaments.push_back({prev_end, s.time, gap_extremal});
      } else if (z != prev_band) {
        report.jumps.push_back({s.time, z});
      }
    }
    run_band = z;
    run_start = s.time;
    run_end = s.time;
    gap_has_middle = false;
  }
  if (run_band != 0) {
    report.dwell_times.push_back(run_end - run_start);
  }
  return report;
}

JumpReport detect_jumps(const TrajectoryRecord& record, double band) {
  return detect_jumps(record.samples, band);
}

} // namespace mmesim
