/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MMESIM_RUNNER_HPP
#define MMESIM_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmesim/traj.hpp"

namespace mmesim {

enum class RunMode { master, trajectory, ensemble };

// One fully resolved run.  Every output (bloch.csv, events.csv,
// summary.json, plot.gp) is a pure function of this struct, so a repeated
// run is byte-identical.
struct RunConfig {
  RunMode mode = RunMode::master;
  std::optional<std::string> preset_name;
  double omega = 1.0;
  double p = 0.0;
  double rate = 0.0;
  std::string init = "2"; // basis label "1" / "2" or Bloch triple "u,v,w"
  Scheme scheme = Scheme::event_driven;
  std::optional<double> dt; // resolved per mode when unset
  double t_final = 30.0;
  std::optional<double> sample_interval;
  std::uint64_t seed = 12345;
  int n = 1000;      // ensemble size
  double band = 0.1; // jump-detection band half-width
  int threads = 0;
  // Optional time window restricting the written samples and events.
  std::optional<double> window_start;
  std::optional<double> window_end;
  // Nominal decay rate quoted alongside the parameter set, if any; reported
  // next to the recomputed one, never in place of it.
  std::optional<double> caption_gamma;
  std::string out_dir; // resolved via MMESIM_OUT_ROOT when empty
};

// Built-in parameter sets fig1..fig8 spanning the regimes of interest:
// damped Rabi oscillation (fig1), weak measurements (fig2-fig4), sharp-
// measurement telegraphing (fig5) and weak-measurement filaments
// (fig6-fig8, the latter two being pinned-seed zooms of fig6).
RunConfig preset(const std::string& name);
const std::vector<std::string>& preset_names();

// Execute one run and write its artifacts; returns a process exit status
// (0 on success, throws on error).
int run(const RunConfig& cfg);

// Master-equation propagation plus a trajectory-statistics pass for every
// (rate, p) grid point, each in its own subdirectory, aggregated into
// sweep.csv.
int sweep(const RunConfig& cfg,
          const std::vector<std::pair<double, double>>& grid);

// Software version reported in summary.json and --version.
const char* version();

// Serialize with 12 significant digits (the fixed CSV number format).
std::string format_number(double x);

} // namespace mmesim

#endif
