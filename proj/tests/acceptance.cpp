/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

// End-to-end acceptance gate.  Each criterion exercises one load-bearing
// property of the simulator through the public API, prints a single
// PASS/FAIL line with the measured number next to its pinned tolerance,
// and the process exit status is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "mmesim/analysis.hpp"
#include "mmesim/measurement.hpp"
#include "mmesim/mme.hpp"
#include "mmesim/qops.hpp"
#include "mmesim/traj.hpp"
#include "mmesim/twolevel.hpp"

using namespace mmesim;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& detail) {
  std::printf("%s C%d: %s\n", ok ? "PASS" : "FAIL", idx, detail.c_str());
  if (!ok) {
    ++g_failures;
  }
}

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// Uniform random point on the Bloch sphere plus a random global phase.
StateVector random_state(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double cos_theta = 2.0 * unit(gen) - 1.0;
  const double theta = std::acos(cos_theta);
  const double phi = 2.0 * M_PI * unit(gen);
  const double chi = 2.0 * M_PI * unit(gen);
  CVector amps(2);
  amps << std::polar(std::cos(theta / 2.0), chi),
      std::polar(std::sin(theta / 2.0), chi + phi);
  return StateVector(amps);
}

DensityOperator random_density(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Random direction, random length < 1: covers mixed states.
  const double cos_theta = 2.0 * unit(gen) - 1.0;
  const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);
  const double phi = 2.0 * M_PI * unit(gen);
  const double r = std::cbrt(unit(gen));
  return density_from_bloch({r * sin_theta * std::cos(phi),
                             r * sin_theta * std::sin(phi), r * cos_theta});
}

// Criterion 1: the fixed-step propagator reproduces the closed-form damped
// oscillation over a full run.
void c1() {
  const double tol = 1e-6;
  const AtomParams params = AtomParams::from_gamma(1.0, 0.1414);
  const MmeModel model = two_level_model(params);
  const DensityOperator rho0 = density_from_state(StateVector::basis(2, 1));
  const PropagationResult res = propagate(model, rho0, 20.0, 1e-3, 0.01);

  double max_dev = 0.0;
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    const BlochVector got = bloch_from_density(res.states[i]);
    const BlochVector ref =
        analytic_bloch({0, 0, 1}, res.times[i], 1.0, params.gamma());
    max_dev = std::max({max_dev, std::abs(got.u - ref.u),
                        std::abs(got.v - ref.v), std::abs(got.w - ref.w)});
  }
  report(1, max_dev <= tol,
         fmt("propagated Bloch vector matches the closed form over 20/Omega "
             "(max dev %.3g, tol %.3g)",
             max_dev, tol));
}

// Criterion 2: parameter pairs with equal dephasing rates produce the same
// averaged evolution; only gamma enters the two-level equation.
void c2() {
  const double tol = 1e-9;
  const double gamma = 0.5;
  const std::vector<double> ps = {0.0, 0.25, 0.4};
  std::vector<PropagationResult> results;
  for (const double p : ps) {
    const double weight =
        (std::sqrt(1.0 - p) - std::sqrt(p)) * (std::sqrt(1.0 - p) - std::sqrt(p));
    const double rate = 2.0 * gamma / weight;
    const MmeModel model = two_level_model(AtomParams(1.0, p, rate));
    const DensityOperator rho0 = density_from_bloch({0.6, 0.0, 0.8});
    results.push_back(propagate(model, rho0, 10.0, 5e-4, 0.1));
  }
  double max_dev = 0.0;
  for (std::size_t i = 0; i < results[0].states.size(); ++i) {
    for (std::size_t k = 1; k < results.size(); ++k) {
      const double dev = (results[0].states[i].matrix() -
                          results[k].states[i].matrix())
                             .cwiseAbs()
                             .maxCoeff();
      max_dev = std::max(max_dev, dev);
    }
  }
  report(2, max_dev <= tol,
         fmt("three (rate, p) pairs at gamma = 0.5 evolve identically "
             "(max dev %.3g, tol %.3g)",
             max_dev, tol));
}

// Criterion 3: the measurement generator equals the double-commutator form
// on arbitrary states, not just on a convenient family.
void c3() {
  const double tol = 1e-12;
  const AtomParams params(1.0, 0.16, 70.86);
  const MmeModel model = two_level_model(params);
  const Matrix h = hamiltonian(params.omega());
  std::mt19937_64 gen(3);
  double max_dev = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const DensityOperator rho = random_density(gen);
    const Matrix a = generator(model, rho);
    const Matrix b =
        double_commutator_generator(pauli(3), params.gamma(), h, rho.matrix());
    max_dev = std::max(max_dev, (a - b).cwiseAbs().maxCoeff());
  }
  report(3, max_dev <= tol,
         fmt("generator equals the double-commutator form on 1000 random "
             "states (max dev %.3g, tol %.3g)",
             max_dev, tol));
}

// Criterion 4: one unread measurement shrinks the dipole components by
// exactly 2 sqrt(p (1 - p)) and leaves the inversion alone.
void c4() {
  const double tol = 1e-12;
  double max_dev = 0.0;
  for (const double p : {0.0, 0.1, 0.16, 0.36, 0.49, 0.5}) {
    const KrausSet kraus = two_level_kraus(p);
    const double shrink = 2.0 * std::sqrt(p * (1.0 - p));
    const DensityOperator rho = density_from_bloch({0.6, 0.0, 0.8});
    const BlochVector after = bloch_from_density(apply_channel(kraus, rho));
    max_dev = std::max({max_dev, std::abs(after.u - shrink * 0.6),
                        std::abs(after.v), std::abs(after.w - 0.8)});
  }
  report(4, max_dev <= tol,
         fmt("unread measurement shrinks the dipole by 2 sqrt(p(1-p)) "
             "(max dev %.3g, tol %.3g)",
             max_dev, tol));
}

// Criterion 5: the trajectory ensemble mean converges to the averaged
// equation, with the error falling as the ensemble grows.
void c5() {
  const double tol = 0.05;
  const AtomParams params(1.0, 0.49, 20.0);
  const StateVector s0 = StateVector::basis(2, 1);
  TrajectoryConfig cfg;
  cfg.scheme = Scheme::event_driven;
  cfg.t_final = 30.0;
  cfg.sample_interval = 0.05;
  cfg.seed = 424242;

  const auto small = ensemble_mean_bloch(run_ensemble(params, s0, cfg, 1000));
  const auto large = ensemble_mean_bloch(run_ensemble(params, s0, cfg, 10000));

  auto max_err = [&](const std::vector<BlochSeriesPoint>& series,
                     long* n_within) {
    double err = 0.0;
    long within = 0;
    for (const auto& pt : series) {
      const BlochVector ref =
          analytic_bloch({0, 0, 1}, pt.time, params.omega(), params.gamma());
      const double dev = std::abs(pt.mean.w - ref.w);
      err = std::max(err, dev);
      within += dev <= tol ? 1 : 0;
    }
    if (n_within) {
      *n_within = within;
    }
    return err;
  };

  long within = 0;
  const double err_large = max_err(large, &within);
  const double err_small = max_err(small, nullptr);
  const double frac = static_cast<double>(within) /
                      static_cast<double>(large.size());
  const double ratio = err_small / err_large;
  const bool ok = frac >= 0.99 && ratio >= 2.0;
  report(5, ok,
         fmt("10000-record mean tracks the averaged equation (within 0.05 on "
             "%.1f%% of samples, need 99%%; 1000-record error is %.2fx "
             "larger, need >= 2x)",
             100.0 * frac, ratio));
}

// Criterion 6: under sharp rapid measurements the record telegraphs, and
// the jump count matches the slowdown rate Omega^2 / (2 R).
void c6() {
  const AtomParams params(1.0, 0.0, 100.0);
  TrajectoryConfig cfg;
  cfg.t_final = 4000.0;
  cfg.sample_interval = 0.25;
  cfg.seed = 2026;
  const TrajectoryRecord rec =
      run_trajectory(params, StateVector::basis(2, 1), cfg);
  const JumpReport rep = detect_jumps(rec, 0.1);

  const double expected =
      params.omega() * params.omega() / (2.0 * params.rate()) * cfg.t_final;
  const double slack = 3.0 * std::sqrt(expected);
  const double n = static_cast<double>(rep.jumps.size());
  report(6, std::abs(n - expected) <= slack,
         fmt("telegraph jump count matches Omega^2/(2R) (got %.0f, expected "
             "%.0f +- %.1f)",
             n, expected, slack));
}

// Criterion 7: an outcome-2 event immediately after an outcome-1 event
// restores the pre-measurement state exactly (the operation elements for
// opposite outcomes are proportional to the identity in product).
void c7() {
  const double tol = 1e-12;
  std::mt19937_64 gen(7);
  double max_dev = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const StateVector s = random_state(gen);
    const double p = 0.16;
    const SequenceState after = sequence_state(s.amplitude(0), s.amplitude(1),
                                               p, {1, 2});
    const Complex overlap = std::conj(s.amplitude(0)) * after.alpha +
                            std::conj(s.amplitude(1)) * after.beta;
    max_dev = std::max(max_dev, std::abs(std::abs(overlap) - 1.0));
    max_dev = std::max(max_dev,
                       std::abs(after.probability - p * (1.0 - p)));
  }
  report(7, max_dev <= tol,
         fmt("outcome pair {1,2} restores the state with probability p(1-p) "
             "on 1000 random states (max dev %.3g, tol %.3g)",
             max_dev, tol));
}

// Criterion 8: outcome-sequence probabilities are a normalized distribution
// for every record length up to 10.
void c8() {
  const double tol = 1e-10;
  std::mt19937_64 gen(8);
  const StateVector s = random_state(gen);
  double max_dev = 0.0;
  for (int k = 1; k <= 10; ++k) {
    double total = 0.0;
    for (long mask = 0; mask < (1L << k); ++mask) {
      std::vector<int> outcomes(k);
      for (int j = 0; j < k; ++j) {
        outcomes[j] = ((mask >> j) & 1) + 1;
      }
      total += sequence_state(s.amplitude(0), s.amplitude(1), 0.3, outcomes)
                   .probability;
    }
    max_dev = std::max(max_dev, std::abs(total - 1.0));
  }
  report(8, max_dev <= tol,
         fmt("sequence probabilities sum to 1 for all records up to length "
             "10 (max dev %.3g, tol %.3g)",
             max_dev, tol));
}

// Criterion 9: long runs stay on the physical manifold in both pictures:
// density matrices keep trace, hermiticity and positivity; pure trajectory
// states keep their norm.
void c9() {
  double trace_err = 0.0;
  double herm_err = 0.0;
  double min_eig = 1.0;
  const DensityOperator rho0 = density_from_bloch({0.3, 0.2, 0.5});
  for (const auto& [p, rate] : std::vector<std::pair<double, double>>{
           {0.49, 20.0}, {0.16, 70.86}, {0.0, 0.2828}}) {
    const PropagationResult res = propagate(
        two_level_model(AtomParams(1.0, p, rate)), rho0, 100.0, 1e-3, 0.1);
    trace_err = std::max(trace_err, res.max_trace_error);
    herm_err = std::max(herm_err, res.max_hermiticity_error);
    min_eig = std::min(min_eig, res.min_eigenvalue);
  }

  double norm_err = 0.0;
  for (const auto& [p, rate, seed] :
       std::vector<std::tuple<double, double, std::uint64_t>>{
           {0.49, 20.0, 1002}, {0.0, 100.0, 1005}, {0.16, 70.86, 1006}}) {
    TrajectoryConfig cfg;
    cfg.t_final = 1000.0;
    cfg.sample_interval = 0.05;
    cfg.seed = seed;
    const TrajectoryRecord rec =
        run_trajectory(AtomParams(1.0, p, rate), StateVector::basis(2, 1), cfg);
    norm_err = std::max(norm_err, rec.max_norm_error);
  }

  const bool ok = trace_err <= 1e-9 && herm_err <= 1e-10 &&
                  min_eig >= -1e-8 && norm_err <= 1e-10;
  report(9, ok,
         fmt("states stay physical over long runs (trace dev %.3g <= 1e-9, "
             "hermiticity dev %.3g <= 1e-10, norm dev %.3g <= 1e-10)",
             trace_err, herm_err, norm_err));
}

// Criterion 10: filaments are a nonideal-measurement effect: with the same
// record of measurement times, the unsharp atom shows band excursions that
// the sharp atom does not.
void c10() {
  TrajectoryConfig cfg;
  cfg.t_final = 4000.0;
  cfg.sample_interval = 0.01;
  cfg.seed = 1006;
  const StateVector s0 = StateVector::basis(2, 1);
  const JumpReport unsharp =
      detect_jumps(run_trajectory(AtomParams(1.0, 0.16, 70.86), s0, cfg), 0.1);
  const JumpReport sharp =
      detect_jumps(run_trajectory(AtomParams(1.0, 0.0, 70.86), s0, cfg), 0.1);

  const bool ok = unsharp.filament_rate() > 0.0 &&
                  unsharp.filament_rate() > sharp.filament_rate();
  report(10, ok,
         fmt("filaments appear only for nonideal measurements (unsharp rate "
             "%.3g, sharp rate %.3g)",
             unsharp.filament_rate(), sharp.filament_rate()));
}

} // namespace

int main() {
  c1();
  c2();
  c3();
  c4();
  c5();
  c6();
  c7();
  c8();
  c9();
  c10();
  if (g_failures == 0) {
    std::printf("all 10 criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", g_failures);
  }
  return g_failures;
}
