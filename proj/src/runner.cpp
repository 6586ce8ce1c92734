/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mmesim/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mmesim/analysis.hpp"
#include "mmesim/mme.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace mmesim {

namespace {

constexpr const char* kVersion = "1.0.0";

std::string scheme_name(Scheme s) {
  return s == Scheme::binned ? "binned" : "event-driven";
}

std::string regime_name(DampingRegime r) {
  switch (r) {
  case DampingRegime::underdamped:
    return "underdamped";
  case DampingRegime::overdamped:
    return "overdamped";
  default:
    return "critical";
  }
}

std::string mode_name(RunMode m) {
  switch (m) {
  case RunMode::master:
    return "master";
  case RunMode::trajectory:
    return "trajectory";
  default:
    return "ensemble";
  }
}

BlochVector parse_init(const std::string& text) {
  if (text == "1") {
    return {0.0, 0.0, -1.0};
  }
  if (text == "2") {
    return {0.0, 0.0, 1.0};
  }
  BlochVector b;
  std::istringstream in(text);
  char c1 = 0;
  char c2 = 0;
  if (!(in >> b.u >> c1 >> b.v >> c2 >> b.w) || c1 != ',' || c2 != ',' ||
      !(in >> std::ws).eof()) {
    throw ConfigurationError("init: expected '1', '2' or a 'u,v,w' triple, "
                             "got '" + text + "'");
  }
  return b;
}

double resolve_dt(const RunConfig& cfg, const AtomParams& params) {
  if (cfg.dt) {
    return *cfg.dt;
  }
  if (cfg.mode == RunMode::master) {
    // Keep inside the integrator guards with headroom.
    return std::min(1e-3, 0.05 / std::max({1.0, params.rate(),
                                           params.omega()}));
  }
  // Binned trajectories aim for a 1% per-bin measurement probability.
  return 0.01 / std::max(1.0, params.rate());
}

double resolve_sample_interval(const RunConfig& cfg) {
  if (cfg.sample_interval) {
    return *cfg.sample_interval;
  }
  return cfg.mode == RunMode::ensemble ? 0.05 : 0.01;
}

fs::path resolve_out_dir(const RunConfig& cfg, const char* fallback = nullptr) {
  if (!cfg.out_dir.empty()) {
    return fs::path(cfg.out_dir);
  }
  const char* root = std::getenv("MMESIM_OUT_ROOT");
  fs::path base = root != nullptr && *root != '\0' ? fs::path(root)
                                                   : fs::path("mmesim_out");
  if (cfg.preset_name) {
    return base / *cfg.preset_name;
  }
  return base / (fallback != nullptr ? fallback : mode_name(cfg.mode));
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + dir.string() +
                  "': " + ec.message());
  }
}

std::ofstream open_out(const fs::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + file.string() + "' for writing");
  }
  return out;
}

void finish(std::ofstream& out, const fs::path& file) {
  out.flush();
  if (!out) {
    throw IoError("write to '" + file.string() + "' failed");
  }
}

struct WindowedRecord {
  std::vector<SamplePoint> samples;
  std::vector<MeasurementEvent> events;
};

WindowedRecord apply_window(const TrajectoryRecord& rec,
                            const RunConfig& cfg) {
  WindowedRecord out;
  const double lo = cfg.window_start.value_or(0.0);
  const double hi = cfg.window_end.value_or(rec.config.t_final);
  for (const auto& s : rec.samples) {
    if (s.time >= lo - 1e-12 && s.time <= hi + 1e-12) {
      out.samples.push_back(s);
    }
  }
  for (const auto& e : rec.events) {
    if (e.time >= lo - 1e-12 && e.time <= hi + 1e-12) {
      out.events.push_back(e);
    }
  }
  return out;
}

void write_bloch_csv(const fs::path& file,
                     const std::vector<SamplePoint>& samples) {
  std::ofstream out = open_out(file);
  out << "t,u,v,w\n";
  for (const auto& s : samples) {
    out << format_number(s.time) << ',' << format_number(s.bloch.u) << ','
        << format_number(s.bloch.v) << ',' << format_number(s.bloch.w)
        << '\n';
  }
  finish(out, file);
}

void write_mean_bloch_csv(const fs::path& file,
                          const std::vector<BlochSeriesPoint>& series) {
  std::ofstream out = open_out(file);
  out << "t,u,v,w,u_se,v_se,w_se\n";
  for (const auto& s : series) {
    out << format_number(s.time) << ',' << format_number(s.mean.u) << ','
        << format_number(s.mean.v) << ',' << format_number(s.mean.w) << ','
        << format_number(s.se.u) << ',' << format_number(s.se.v) << ','
        << format_number(s.se.w) << '\n';
  }
  finish(out, file);
}

void write_events_csv(const fs::path& file,
                      const std::vector<MeasurementEvent>& events) {
  std::ofstream out = open_out(file);
  out << "t,outcome,w_before,w_after,gap\n";
  for (const auto& e : events) {
    out << format_number(e.time) << ',' << e.outcome << ','
        << format_number(e.w_before) << ',' << format_number(e.w_after)
        << ',' << format_number(e.gap) << '\n';
  }
  finish(out, file);
}

void write_plot(const fs::path& file, const RunConfig& cfg, bool has_se) {
  std::ofstream out = open_out(file);
  out << "# gnuplot script; run from this directory\n"
      << "set terminal pngcairo size 1000,420\n"
      << "set output 'inversion.png'\n"
      << "set xlabel 'Omega t'\n"
      << "set ylabel 'w'\n"
      << "set yrange [-1.1:1.1]\n"
      << "set grid\n";
  if (has_se) {
    out << "plot 'bloch.csv' using 1:4 with lines lw 2 lc rgb 'black' "
           "title 'mean w', \\\n"
        << "     'bloch.csv' using 1:($4+3*$7) with lines lc rgb 'gray' "
           "title '+3 se', \\\n"
        << "     'bloch.csv' using 1:($4-3*$7) with lines lc rgb 'gray' "
           "title '-3 se'\n";
  } else {
    out << "plot 'bloch.csv' using 1:4 with lines lw 1 lc rgb 'black' "
           "title 'w'\n";
  }
  if (cfg.mode != RunMode::master) {
    out << "# events.csv holds the raw measurement record\n";
  }
  finish(out, file);
}

json atom_section(const AtomParams& params, const RunConfig& cfg) {
  json j;
  j["omega"] = params.omega();
  j["p"] = params.p();
  j["rate"] = params.rate();
  j["gamma_recomputed"] = params.gamma();
  if (cfg.caption_gamma) {
    j["caption_gamma"] = *cfg.caption_gamma;
  } else {
    j["caption_gamma"] = nullptr;
  }
  j["omega_prime"] = params.omega_prime();
  j["regime"] = regime_name(params.regime());
  return j;
}

json run_section(const RunConfig& cfg, double dt_used, double si_used) {
  json j;
  j["t_final"] = cfg.t_final;
  if (cfg.mode == RunMode::master || cfg.scheme == Scheme::binned) {
    j["dt"] = dt_used;
  } else {
    j["dt"] = nullptr;
  }
  j["sample_interval"] = si_used;
  j["scheme"] = cfg.mode == RunMode::master ? json(nullptr)
                                            : json(scheme_name(cfg.scheme));
  j["seed"] = cfg.seed;
  j["n"] = cfg.mode == RunMode::ensemble ? json(cfg.n) : json(nullptr);
  j["band"] = cfg.band;
  j["initial_state"] = cfg.init;
  if (cfg.window_start || cfg.window_end) {
    j["window"] = json::array({cfg.window_start.value_or(0.0),
                               cfg.window_end.value_or(cfg.t_final)});
  } else {
    j["window"] = nullptr;
  }
  return j;
}

json rng_section(const RunConfig& cfg) {
  json j;
  j["engine"] = "mt19937_64";
  j["seed_derivation"] = "splitmix64 counter stream";
  j["master_seed"] = cfg.seed;
  return j;
}

void write_summary(const fs::path& file, const json& j) {
  std::ofstream out = open_out(file);
  out << j.dump(2) << '\n';
  finish(out, file);
}

json jump_statistics(const JumpReport& report, std::size_t event_count,
                     double duration) {
  json j;
  j["event_count"] = event_count;
  j["measured_event_rate"] =
      duration > 0.0 ? static_cast<double>(event_count) / duration : 0.0;
  j["jump_count"] = report.jumps.size();
  j["jump_rate"] = report.jump_rate();
  j["mean_dwell"] = report.mean_dwell();
  j["dwell_count"] = report.dwell_times.size();
  j["filament_count"] = report.filaments.size();
  j["filament_rate"] = report.filament_rate();
  return j;
}

} // namespace

const char* version() { return kVersion; }

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

int run(const RunConfig& cfg) {
  const AtomParams params(cfg.omega, cfg.p, cfg.rate);
  const double dt = resolve_dt(cfg, params);
  const double si = resolve_sample_interval(cfg);
  const BlochVector b0 = parse_init(cfg.init);
  const fs::path dir = resolve_out_dir(cfg);
  ensure_dir(dir);

  json summary;
  summary["version"] = kVersion;
  summary["mode"] = mode_name(cfg.mode);
  summary["preset"] = cfg.preset_name ? json(*cfg.preset_name) : json(nullptr);
  summary["atom"] = atom_section(params, cfg);
  summary["run"] = run_section(cfg, dt, si);
  summary["rng"] = rng_section(cfg);
  json stats;
  json warnings = json::array();

  if (cfg.mode == RunMode::master) {
    DensityOperator rho0 = density_from_bloch(b0);
    const MmeModel model = two_level_model(params);
    const PropagationResult res =
        propagate(model, rho0, cfg.t_final, dt, si);
    std::vector<SamplePoint> samples;
    samples.reserve(res.times.size());
    double max_dev = 0.0;
    for (std::size_t i = 0; i < res.times.size(); ++i) {
      const BlochVector b = bloch_from_density(res.states[i]);
      samples.push_back({res.times[i], b});
      const BlochVector ref =
          analytic_bloch(b0, res.times[i], params.omega(), params.gamma());
      max_dev = std::max(max_dev, std::abs(b.w - ref.w));
    }
    write_bloch_csv(dir / "bloch.csv", samples);
    stats["max_abs_dev_w_vs_analytic"] = max_dev;
    stats["max_trace_error"] = res.max_trace_error;
    stats["max_hermiticity_error"] = res.max_hermiticity_error;
    stats["min_eigenvalue"] = res.min_eigenvalue;
    for (const auto& w : res.warnings) {
      warnings.push_back(w);
    }
    write_plot(dir / "plot.gp", cfg, false);
  } else if (cfg.mode == RunMode::trajectory) {
    StateVector s0 = state_from_bloch(b0);
    TrajectoryConfig tcfg;
    tcfg.scheme = cfg.scheme;
    tcfg.dt = dt;
    tcfg.t_final = cfg.t_final;
    tcfg.sample_interval = si;
    tcfg.seed = cfg.seed;
    const TrajectoryRecord rec = run_trajectory(params, s0, tcfg);
    const WindowedRecord view = apply_window(rec, cfg);
    write_bloch_csv(dir / "bloch.csv", view.samples);
    write_events_csv(dir / "events.csv", view.events);
    const JumpReport report = detect_jumps(view.samples, cfg.band);
    const double span = view.samples.empty()
                            ? 0.0
                            : view.samples.back().time -
                                  view.samples.front().time;
    stats = jump_statistics(report, view.events.size(), span);
    stats["max_norm_error"] = rec.max_norm_error;
    write_plot(dir / "plot.gp", cfg, false);
  } else {
    StateVector s0 = state_from_bloch(b0);
    TrajectoryConfig tcfg;
    tcfg.scheme = cfg.scheme;
    tcfg.dt = dt;
    tcfg.t_final = cfg.t_final;
    tcfg.sample_interval = si;
    tcfg.seed = cfg.seed;
    const auto records =
        run_ensemble(params, s0, tcfg, cfg.n,
                     static_cast<unsigned>(std::max(cfg.threads, 0)));
    const auto series = ensemble_mean_bloch(records);
    write_mean_bloch_csv(dir / "bloch.csv", series);
    double max_dev = 0.0;
    double max_se = 0.0;
    for (const auto& pt : series) {
      const BlochVector ref =
          analytic_bloch(b0, pt.time, params.omega(), params.gamma());
      max_dev = std::max(max_dev, std::abs(pt.mean.w - ref.w));
      max_se = std::max(max_se, pt.se.w);
    }
    stats["max_abs_dev_mean_w_vs_analytic"] = max_dev;
    stats["max_se_w"] = max_se;
    write_plot(dir / "plot.gp", cfg, true);
  }

  summary["statistics"] = stats;
  summary["warnings"] = warnings;
  write_summary(dir / "summary.json", summary);
  return 0;
}

int sweep(const RunConfig& cfg,
          const std::vector<std::pair<double, double>>& grid) {
  if (grid.empty()) {
    throw ConfigurationError("sweep: empty parameter grid");
  }
  const fs::path dir = resolve_out_dir(cfg, "sweep");
  ensure_dir(dir);

  std::ofstream agg = open_out(dir / "sweep.csv");
  agg << "index,rate,p,gamma,omega_prime,regime,event_count,jump_count,"
         "jump_rate,mean_dwell,filament_count,filament_rate\n";

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [rate, p] = grid[i];
    RunConfig point = cfg;
    point.mode = RunMode::master;
    point.rate = rate;
    point.p = p;
    point.preset_name.reset();
    point.dt = cfg.dt; // per-point auto-resolution when unset
    point.out_dir = (dir / ("point_" + std::to_string(i))).string();
    run(point);

    // Trajectory-statistics pass on the same grid point, same seed
    // protocol for every point.
    const AtomParams params(cfg.omega, p, rate);
    StateVector s0 = state_from_bloch(parse_init(cfg.init));
    TrajectoryConfig tcfg;
    tcfg.scheme = cfg.scheme;
    tcfg.dt = resolve_dt(cfg, params);
    tcfg.t_final = cfg.t_final;
    tcfg.sample_interval = resolve_sample_interval(cfg);
    tcfg.seed = cfg.seed;
    const TrajectoryRecord rec = run_trajectory(params, s0, tcfg);
    write_events_csv(dir / ("point_" + std::to_string(i)) / "events.csv",
                     rec.events);
    const JumpReport report = detect_jumps(rec, cfg.band);

    agg << i << ',' << format_number(rate) << ',' << format_number(p) << ','
        << format_number(params.gamma()) << ','
        << format_number(params.omega_prime()) << ','
        << regime_name(params.regime()) << ',' << rec.events.size() << ','
        << report.jumps.size() << ',' << format_number(report.jump_rate())
        << ',' << format_number(report.mean_dwell()) << ','
        << report.filaments.size() << ','
        << format_number(report.filament_rate()) << '\n';
  }
  finish(agg, dir / "sweep.csv");
  return 0;
}

} // namespace mmesim
