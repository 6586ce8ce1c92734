/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mmesim/traj.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <thread>

#include "mmesim/measurement.hpp"

namespace mmesim {

namespace {

// Uniform doubles in [0, 1) built from the top 53 bits of the generator
// output, so the draw sequence is identical on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Exponential waiting time with the given rate.
  double exponential(double rate) {
    return -std::log1p(-uniform()) / rate;
  }

private:
  std::mt19937_64 gen_;
};

struct PureState {
  Complex a; // |1> amplitude
  Complex b; // |2> amplitude

  double w() const { return std::norm(b) - std::norm(a); }

  BlochVector bloch() const {
    const Complex cross = std::conj(a) * b;
    return {2.0 * cross.real(), -2.0 * cross.imag(), w()};
  }

  double norm_error() const {
    return std::abs(std::sqrt(std::norm(a) + std::norm(b)) - 1.0);
  }

  void renormalize() {
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
  }
};

// exp(+i omega tau s1 / 2) = cos(omega tau / 2) I + i sin(omega tau / 2) s1.
PureState rotate(const PureState& s, double omega, double tau) {
  const double half = 0.5 * omega * tau;
  const Complex c{std::cos(half), 0.0};
  const Complex is{0.0, std::sin(half)};
  return {c * s.a + is * s.b, c * s.b + is * s.a};
}

int draw_outcome(const KrausSet& kraus, const PureState& s, Rng& rng) {
  CVector amps(2);
  amps(0) = s.a;
  amps(1) = s.b;
  const auto probs = outcome_probabilities(kraus, StateVector(amps, 1e-9));
  const double u = rng.uniform();
  double cum = 0.0;
  for (const auto& o : probs) {
    cum += o.probability;
    if (u < cum) {
      return o.index;
    }
  }
  return probs.back().index;
}

PureState collapse_state(const KrausSet& kraus, const PureState& s,
                         int outcome) {
  CVector amps(2);
  amps(0) = s.a;
  amps(1) = s.b;
  const StateVector post =
      collapse(kraus, StateVector(amps, 1e-9), outcome);
  return {post.amplitude(0), post.amplitude(1)};
}

void validate_config(const AtomParams& params, const TrajectoryConfig& cfg) {
  if (!(cfg.t_final > 0.0) || !std::isfinite(cfg.t_final)) {
    throw ConfigurationError("run_trajectory: t_final must be positive");
  }
  if (!(cfg.sample_interval > 0.0) || !std::isfinite(cfg.sample_interval)) {
    throw ConfigurationError("run_trajectory: sample_interval must be "
                             "positive");
  }
  if (cfg.scheme == Scheme::binned) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
      throw ConfigurationError("run_trajectory: dt must be positive for the "
                               "binned scheme");
    }
    if (params.rate() * cfg.dt > 0.05 + 1e-12) {
      throw ConfigurationError("run_trajectory: rate * dt exceeds 0.05; the "
                               "binned scheme needs smaller bins");
    }
  }
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over a golden-ratio stride: a bijection of the
  // counter for any fixed master seed.
  std::uint64_t x = master + index * 0x9E3779B97F4A7C15ull;
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

StateVector unitary_step(const StateVector& s, double omega, double tau) {
  if (s.dim() != 2) {
    throw DimensionError("unitary_step: two-level states only");
  }
  if (!std::isfinite(omega) || !std::isfinite(tau)) {
    throw ArgumentError("unitary_step: omega and tau must be finite");
  }
  const PureState out =
      rotate({s.amplitude(0), s.amplitude(1)}, omega, tau);
  CVector amps(2);
  amps(0) = out.a;
  amps(1) = out.b;
  return StateVector(std::move(amps), 1e-9);
}

TrajectoryRecord run_trajectory(const AtomParams& params,
                                const StateVector& s0,
                                const TrajectoryConfig& cfg) {
  if (s0.dim() != 2) {
    throw DimensionError("run_trajectory: two-level states only");
  }
  validate_config(params, cfg);

  const KrausSet kraus = two_level_kraus(params.p());
  const double omega = params.omega();
  const double rate = params.rate();
  const double si = cfg.sample_interval;
  const auto n_samples =
      static_cast<long>(std::floor(cfg.t_final / si + 1e-9));

  Rng rng(cfg.seed);
  PureState psi{s0.amplitude(0), s0.amplitude(1)};

  std::vector<SamplePoint> samples;
  samples.reserve(static_cast<std::size_t>(n_samples) + 1);
  std::vector<MeasurementEvent> events;
  double max_norm_err = 0.0;

  auto sample_at = [&](double t_label) {
    max_norm_err = std::max(max_norm_err, psi.norm_error());
    samples.push_back({t_label, psi.bloch()});
  };

  if (cfg.scheme == Scheme::event_driven) {
    // psi anchors the state at the last collapse (or t = 0).  Samples are
    // rendered by one exact rotation from that anchor without touching it,
    // so the recorded events are independent of the sampling grid.
    long k = 0;
    double t_anchor = 0.0;
    double prev_event_t = 0.0;
    double gap = rate > 0.0 ? rng.exponential(rate)
                            : std::numeric_limits<double>::infinity();
    double t_event = gap;
    auto view_at = [&](double t) {
      return t > t_anchor ? rotate(psi, omega, t - t_anchor) : psi;
    };
    while (true) {
      const double t_sample = k <= n_samples
                                  ? static_cast<double>(k) * si
                                  : std::numeric_limits<double>::infinity();
      // Ties sample first, recording the pre-measurement state.
      if (t_sample <= t_event && t_sample <= cfg.t_final) {
        const PureState at = view_at(t_sample);
        max_norm_err = std::max(max_norm_err, at.norm_error());
        samples.push_back({t_sample, at.bloch()});
        ++k;
        continue;
      }
      if (t_event <= cfg.t_final) {
        psi = view_at(t_event);
        psi.renormalize();
        t_anchor = t_event;
        const double w_before = psi.w();
        const int outcome = draw_outcome(kraus, psi, rng);
        psi = collapse_state(kraus, psi, outcome);
        events.push_back({t_event, outcome, w_before, psi.w(),
                          t_event - prev_event_t});
        prev_event_t = t_event;
        gap = rng.exponential(rate);
        t_event += gap;
        continue;
      }
      psi = view_at(cfg.t_final);
      break;
    }
  } else {
    long k = 0;
    auto emit_due = [&](double t_reached) {
      while (k <= n_samples &&
             static_cast<double>(k) * si <= t_reached + 1e-12) {
        sample_at(static_cast<double>(k) * si);
        ++k;
      }
    };
    emit_due(0.0);
    double prev_event_t = 0.0;
    for (long bin = 0;; ++bin) {
      const double t0 = static_cast<double>(bin) * cfg.dt;
      if (t0 >= cfg.t_final - 1e-12) {
        break;
      }
      const double step = std::min(cfg.dt, cfg.t_final - t0);
      const double t1 = std::min(t0 + step, cfg.t_final);
      // The drive runs for the full bin; a measurement, when the bin draws
      // one, is an instantaneous collapse at the bin end.
      psi = rotate(psi, omega, step);
      psi.renormalize();
      if (rng.uniform() < rate * step) {
        const double w_before = psi.w();
        const int outcome = draw_outcome(kraus, psi, rng);
        psi = collapse_state(kraus, psi, outcome);
        events.push_back({t1, outcome, w_before, psi.w(),
                          t1 - prev_event_t});
        prev_event_t = t1;
      }
      emit_due(t1);
    }
    emit_due(cfg.t_final);
  }

  CVector final_amps(2);
  final_amps(0) = psi.a;
  final_amps(1) = psi.b;
  final_amps /= final_amps.norm();
  return TrajectoryRecord{std::move(samples), std::move(events), cfg,
                          StateVector(std::move(final_amps)), max_norm_err};
}

std::vector<TrajectoryRecord> run_ensemble(const AtomParams& params,
                                           const StateVector& s0,
                                           const TrajectoryConfig& cfg,
                                           int n, unsigned threads) {
  if (n < 1) {
    throw ArgumentError("run_ensemble: n must be >= 1");
  }
  validate_config(params, cfg);

  unsigned nt = threads;
  if (nt == 0) {
    nt = std::min(std::thread::hardware_concurrency(), 8u);
    nt = std::max(nt, 1u);
  }
  nt = std::min<unsigned>(nt, static_cast<unsigned>(n));

  std::vector<std::optional<TrajectoryRecord>> slots(
      static_cast<std::size_t>(n));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](unsigned worker) {
    try {
      for (int i = static_cast<int>(worker); i < n;
           i += static_cast<int>(nt)) {
        TrajectoryConfig local = cfg;
        local.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
        slots[static_cast<std::size_t>(i)] =
            run_trajectory(params, s0, local);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) {
        failure = std::current_exception();
      }
    }
  };

  if (nt == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned wkr = 0; wkr < nt; ++wkr) {
      pool.emplace_back(work, wkr);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  std::vector<TrajectoryRecord> out;
  out.reserve(static_cast<std::size_t>(n));
  for (auto& slot : slots) {
    out.push_back(std::move(*slot));
  }
  return out;
}

} // namespace mmesim
