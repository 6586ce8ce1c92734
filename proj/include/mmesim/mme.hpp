/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MMESIM_MME_HPP
#define MMESIM_MME_HPP

#include <string>
#include <utility>
#include <vector>

#include "mmesim/measurement.hpp"
#include "mmesim/qops.hpp"

namespace mmesim {

// Evolution model for an atom under random, instantaneous measurements:
// coherent drive H plus measurement events at mean rate R whose non-selective
// effect is the channel of the Kraus set.  The generated equation of motion,
//   drho/dt = -i[H, rho] + R (sum_ik A_ik rho A_ik^dag - rho),
// is of Lindblad form with jump operators sqrt(R) A_ik.
class MmeModel {
public:
  MmeModel(Matrix hamiltonian, KrausSet kraus, double rate);

  const Matrix& hamiltonian() const { return h_; }
  const KrausSet& kraus() const { return kraus_; }
  double rate() const { return rate_; }
  int dim() const { return kraus_.dim(); }

private:
  Matrix h_;
  KrausSet kraus_;
  double rate_;
};

// Right-hand side of the equation of motion (Hermitian and traceless for
// Hermitian input).
Matrix generator(const MmeModel& m, const Matrix& rho);
Matrix generator(const MmeModel& m, const DensityOperator& rho);

// -i[H, rho] - (kappa/2) [O, [O, rho]] for a Hermitian monitored observable
// O.  For O with O^2 = I this coincides with a rate-kappa measurement term.
Matrix double_commutator_generator(const Matrix& observable, double kappa,
                                   const Matrix& hamiltonian,
                                   const Matrix& rho);

// Reference Lindblad-form evaluation, one (rate, jump operator) pair per
// channel: -i[H, rho] + sum_k r_k (b rho b^dag - {b^dag b, rho}/2).
Matrix lindblad_generator(const Matrix& hamiltonian,
                          const std::vector<std::pair<double, Matrix>>& channels,
                          const Matrix& rho);

struct PropagationResult {
  std::vector<double> times;
  std::vector<DensityOperator> states;
  std::vector<std::string> warnings;
  // Diagnostics across all sampled outputs, measured before any repair.
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 1.0;
};

// Classic fourth-order Runge-Kutta propagation with fixed step dt, sampled
// every sample_interval (defaults to dt when <= 0).  Step-size guards:
// dt * rate <= 0.1 and dt * |H|_F <= 0.1.  The trace is renormalized only
// when its drift exceeds 1e-9, and each such repair is recorded as a warning.
PropagationResult propagate(const MmeModel& m, const DensityOperator& rho0,
                            double t_final, double dt,
                            double sample_interval = 0.0);

} // namespace mmesim

#endif
