/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "mmesim/errors.hpp"
#include "mmesim/runner.hpp"
#include "mmesim/twolevel.hpp"

namespace {

// Raw command-line values.  Everything is optional so that a preset (or a
// config file) can fill the gaps and explicit flags always win.
struct Staging {
  std::optional<std::string> preset;
  std::optional<std::string> config;
  std::optional<double> omega;
  std::optional<double> p;
  std::optional<double> rate;
  std::optional<double> t_final;
  std::optional<double> dt;
  std::optional<double> sample_interval;
  std::optional<double> band;
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<int> threads;
  std::optional<std::string> init;
  std::optional<std::string> scheme;
  std::optional<std::string> out;
  std::vector<double> window;
  std::vector<std::string> points;
};

void add_atom_flags(CLI::App& app, Staging& st) {
  app.add_option("--preset", st.preset,
                 "Start from a built-in parameter set (see preset-list)");
  app.add_option("--omega", st.omega, "Rabi frequency");
  app.add_option("--p", st.p, "Measurement unsharpness in [0, 1/2]");
  app.add_option("--rate", st.rate, "Measurement rate R");
  app.add_option("--t-final", st.t_final, "Run length in units of 1/Omega");
  app.add_option("--sample-interval", st.sample_interval,
                 "Spacing of recorded samples");
  app.add_option("--init", st.init,
                 "Initial state: basis label '1' or '2', or 'u,v,w'");
  app.add_option("--out", st.out, "Output directory");
  app.add_option("--config", st.config,
                 "Read option values from a TOML/INI file (flags win)")
      ->check(CLI::ExistingFile);
}

// Feed the config file through the already-parsed subcommand so flat keys
// map onto its options.  Options given on the command line are non-empty
// and therefore skipped, which gives flags precedence over the file.
void apply_config(CLI::App& sub, const Staging& st) {
  if (!st.config) {
    return;
  }
  std::ifstream in(*st.config);
  if (!in) {
    throw mmesim::IoError("cannot read config file '" + *st.config + "'");
  }
  sub.allow_config_extras(CLI::config_extras_mode::error);
  sub.parse_from_stream(in);
}

void add_traj_flags(CLI::App& app, Staging& st) {
  app.add_option("--scheme", st.scheme, "Trajectory scheme")
      ->check(CLI::IsMember({"event-driven", "binned"}));
  app.add_option("--dt", st.dt, "Time step (binned scheme / propagator)");
  app.add_option("--seed", st.seed, "Master RNG seed");
  app.add_option("--band", st.band,
                 "Jump-detection band half-width in w");
  app.add_option("--window", st.window,
                 "Restrict written samples/events to [start, end]")
      ->expected(2);
}

mmesim::RunConfig assemble(mmesim::RunMode mode, const Staging& st) {
  mmesim::RunConfig cfg;
  if (st.preset) {
    cfg = mmesim::preset(*st.preset);
  }
  cfg.mode = mode;
  if (st.omega) cfg.omega = *st.omega;
  if (st.p) cfg.p = *st.p;
  if (st.rate) cfg.rate = *st.rate;
  if (st.t_final) cfg.t_final = *st.t_final;
  if (st.dt) cfg.dt = *st.dt;
  if (st.sample_interval) cfg.sample_interval = *st.sample_interval;
  if (st.band) cfg.band = *st.band;
  if (st.seed) cfg.seed = *st.seed;
  if (st.n) cfg.n = *st.n;
  if (st.threads) cfg.threads = *st.threads;
  if (st.init) cfg.init = *st.init;
  if (st.scheme) {
    cfg.scheme = *st.scheme == "binned" ? mmesim::Scheme::binned
                                        : mmesim::Scheme::event_driven;
  }
  if (st.out) cfg.out_dir = *st.out;
  if (st.window.size() == 2) {
    cfg.window_start = st.window[0];
    cfg.window_end = st.window[1];
  }
  return cfg;
}

std::vector<std::pair<double, double>> parse_points(
    const std::vector<std::string>& texts) {
  std::vector<std::pair<double, double>> grid;
  grid.reserve(texts.size());
  for (const auto& text : texts) {
    std::istringstream in(text);
    double rate = 0.0;
    double p = 0.0;
    char sep = 0;
    if (!(in >> rate >> sep >> p) || sep != ',' || !(in >> std::ws).eof()) {
      throw mmesim::ConfigurationError(
          "--point: expected 'rate,p', got '" + text + "'");
    }
    grid.emplace_back(rate, p);
  }
  return grid;
}

void print_presets() {
  std::printf("%-6s %-10s %8s %6s %9s %9s %9s\n", "name", "mode", "omega",
              "p", "rate", "gamma", "t_final");
  for (const auto& name : mmesim::preset_names()) {
    const mmesim::RunConfig cfg = mmesim::preset(name);
    const mmesim::AtomParams params(cfg.omega, cfg.p, cfg.rate);
    const char* mode = cfg.mode == mmesim::RunMode::master ? "master"
                                                           : "trajectory";
    std::printf("%-6s %-10s %8g %6g %9g %9.6g %9g\n", name.c_str(), mode,
                cfg.omega, cfg.p, cfg.rate, params.gamma(), cfg.t_final);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level atom under repeated nonideal measurement"};
  app.set_version_flag("--version", mmesim::version());
  app.require_subcommand(1);

  Staging st;

  CLI::App* master =
      app.add_subcommand("master", "Propagate the averaged density matrix");
  add_atom_flags(*master, st);
  master->add_option("--dt", st.dt, "Integrator time step");

  CLI::App* traj = app.add_subcommand(
      "traj", "Simulate a single stochastic measurement record");
  add_atom_flags(*traj, st);
  add_traj_flags(*traj, st);

  CLI::App* ensemble = app.add_subcommand(
      "ensemble", "Average many trajectories and compare with the master "
                  "equation");
  add_atom_flags(*ensemble, st);
  add_traj_flags(*ensemble, st);
  ensemble->add_option("--n", st.n, "Number of trajectories");
  ensemble->add_option("--threads", st.threads,
                       "Worker threads (0 = auto)");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run master + trajectory statistics over a (rate, p) grid");
  add_atom_flags(*sweep, st);
  add_traj_flags(*sweep, st);
  sweep
      ->add_option("--point", st.points,
                   "Grid point 'rate,p' (repeatable)")
      ->required();

  CLI::App* list =
      app.add_subcommand("preset-list", "Show built-in parameter sets");

  try {
    app.parse(argc, argv);
    if (list->parsed()) {
      print_presets();
      return 0;
    }
    if (master->parsed()) {
      apply_config(*master, st);
      return mmesim::run(assemble(mmesim::RunMode::master, st));
    }
    if (traj->parsed()) {
      apply_config(*traj, st);
      return mmesim::run(assemble(mmesim::RunMode::trajectory, st));
    }
    if (ensemble->parsed()) {
      apply_config(*ensemble, st);
      return mmesim::run(assemble(mmesim::RunMode::ensemble, st));
    }
    if (sweep->parsed()) {
      apply_config(*sweep, st);
      return mmesim::sweep(assemble(mmesim::RunMode::master, st),
                           parse_points(st.points));
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const mmesim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
