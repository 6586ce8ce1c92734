/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MMESIM_TWOLEVEL_HPP
#define MMESIM_TWOLEVEL_HPP

#include "mmesim/mme.hpp"
#include "mmesim/qops.hpp"

namespace mmesim {

// Damping regime of the Bloch equations relative to the drive.
enum class DampingRegime { underdamped, critical, overdamped };

// Resonantly driven two-level atom under rate-R inversion measurements of
// error probability p.  The effective dephasing rate is
//   gamma = (R/2) (sqrt(1-p) - sqrt(p))^2,
// and (v, w) oscillate at omega_prime = sqrt(|omega^2 - gamma^2|) when
// underdamped, relaxing without oscillation when overdamped.
class AtomParams {
public:
  AtomParams(double omega, double p, double rate);

  // Representation of a bare dephasing target: p = 0, rate = 2 * gamma.
  static AtomParams from_gamma(double omega, double gamma);

  double omega() const { return omega_; }
  double p() const { return p_; }
  double rate() const { return rate_; }
  double gamma() const { return gamma_; }
  double omega_prime() const { return omega_prime_; }
  DampingRegime regime() const { return regime_; }

private:
  double omega_;
  double p_;
  double rate_;
  double gamma_;
  double omega_prime_;
  DampingRegime regime_;
};

// Drive Hamiltonian -(omega/2) s1 (resonant frame, hbar = 1).
Matrix hamiltonian(double omega);

// (rate/2) (sqrt(1-p) - sqrt(p))^2.
double gamma_of(double rate, double p);

// Full evolution model for the atom: hamiltonian(omega) driven at the
// measurement rate with the two-outcome Kraus pair.
MmeModel two_level_model(const AtomParams& params);

// Bloch equations of the measured atom:
//   du/dt = -2 gamma u,
//   dv/dt = omega w - 2 gamma v,
//   dw/dt = -omega v.
// The result is a rate of change, not a state.
BlochVector bloch_derivatives(const BlochVector& b, double omega,
                              double gamma);

// Closed-form solution of the Bloch equations at time t >= 0.  All three
// damping regimes are handled by one expression that is continuous in gamma,
// including through the critical point gamma = omega.
BlochVector analytic_bloch(const BlochVector& b0, double t, double omega,
                           double gamma);

} // namespace mmesim

#endif
