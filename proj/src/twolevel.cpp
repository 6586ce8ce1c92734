/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mmesim/twolevel.hpp"

#include <cmath>

namespace mmesim {

AtomParams::AtomParams(double omega, double p, double rate)
    : omega_(omega), p_(p), rate_(rate) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ArgumentError("AtomParams: omega must be positive");
  }
  if (!(p >= 0.0 && p <= 0.5)) {
    throw ArgumentError("AtomParams: p must lie in [0, 1/2]");
  }
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw ArgumentError("AtomParams: rate must be >= 0");
  }
  gamma_ = gamma_of(rate_, p_);
  omega_prime_ = std::sqrt(std::abs(omega_ * omega_ - gamma_ * gamma_));
  if (gamma_ < omega_) {
    regime_ = DampingRegime::underdamped;
  } else if (gamma_ > omega_) {
    regime_ = DampingRegime::overdamped;
  } else {
    regime_ = DampingRegime::critical;
  }
}

AtomParams AtomParams::from_gamma(double omega, double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ArgumentError("AtomParams::from_gamma: gamma must be >= 0");
  }
  return AtomParams(omega, 0.0, 2.0 * gamma);
}

Matrix hamiltonian(double omega) {
  if (!std::isfinite(omega)) {
    throw ArgumentError("hamiltonian: omega must be finite");
  }
  return -0.5 * omega * pauli(1);
}

double gamma_of(double rate, double p) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw ArgumentError("gamma_of: rate must be >= 0");
  }
  if (!(p >= 0.0 && p <= 0.5)) {
    throw ArgumentError("gamma_of: p must lie in [0, 1/2]");
  }
  const double d = std::sqrt(1.0 - p) - std::sqrt(p);
  return 0.5 * rate * d * d;
}

MmeModel two_level_model(const AtomParams& params) {
  return MmeModel(hamiltonian(params.omega()), two_level_kraus(params.p()),
                  params.rate());
}

BlochVector bloch_derivatives(const BlochVector& b, double omega,
                              double gamma) {
  if (!std::isfinite(omega) || !(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ArgumentError("bloch_derivatives: invalid omega or gamma");
  }
  BlochVector d;
  d.u = -2.0 * gamma * b.u;
  d.v = omega * b.w - 2.0 * gamma * b.v;
  d.w = -omega * b.v;
  return d;
}

BlochVector analytic_bloch(const BlochVector& b0, double t, double omega,
                           double gamma) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw ArgumentError("analytic_bloch: t must be >= 0");
  }
  if (!std::isfinite(omega) || !(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ArgumentError("analytic_bloch: invalid omega or gamma");
  }

  // The (v, w) block evolves under exp(Mt) with eigenvalues -gamma +/- i w',
  // w'^2 = omega^2 - gamma^2.  Writing the solution through
  //   C(t) = cos(w' t),  S(t) = sin(w' t) / w'
  // makes it a single entire function of the discriminant d = w'^2: for
  // d < 0 the pair turns into cosh and sinh/k' automatically, and the d -> 0
  // limit (C -> 1, S -> t) is taken by series to stay continuous at the
  // critical point.
  const double d = omega * omega - gamma * gamma;
  const double x2 = d * t * t;
  double c;
  double s;
  if (std::abs(x2) < 1e-10) {
    c = 1.0 - x2 / 2.0 + x2 * x2 / 24.0 - x2 * x2 * x2 / 720.0;
    s = t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0);
  } else if (d > 0.0) {
    const double wp = std::sqrt(d);
    c = std::cos(wp * t);
    s = std::sin(wp * t) / wp;
  } else {
    const double kp = std::sqrt(-d);
    c = std::cosh(kp * t);
    s = std::sinh(kp * t) / kp;
  }

  const double e1 = std::exp(-gamma * t);
  const double e2 = std::exp(-2.0 * gamma * t);
  BlochVector b;
  b.u = b0.u * e2;
  b.v = e1 * (b0.v * (c - gamma * s) + b0.w * omega * s);
  b.w = e1 * (b0.w * (c + gamma * s) - b0.v * omega * s);
  return b;
}

} // namespace mmesim
