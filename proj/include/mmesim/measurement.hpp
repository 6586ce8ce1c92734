/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MMESIM_MEASUREMENT_HPP
#define MMESIM_MEASUREMENT_HPP

#include <vector>

#include "mmesim/qops.hpp"

namespace mmesim {

// Outcome labels are 1-based throughout this module (outcome 1 suggests the
// atom is in |1>, outcome 2 that it is in |2>), matching the convention used
// for pauli(k).  This module is deterministic: random outcome selection is
// the trajectory engine's job.

inline constexpr double kCompletenessTol = 1e-10;

struct MeasurementOutcome {
  int index = 0;        // 1-based outcome label
  double probability = 0.0;
};

// Measurement model as operation elements grouped by outcome: outcome i is
// represented by effects {A_ik}, and sum_ik A_ik^dag A_ik = I within
// kCompletenessTol.
class KrausSet {
public:
  KrausSet(int dim, std::vector<std::vector<Matrix>> outcome_groups);

  int dim() const { return dim_; }
  int num_outcomes() const { return static_cast<int>(groups_.size()); }
  // Effects for the 1-based outcome label.
  const std::vector<Matrix>& effects(int outcome) const;
  bool single_effect(int outcome) const;

private:
  int dim_;
  std::vector<std::vector<Matrix>> groups_;
};

// Probability-operator measure: elements are Hermitian, positive
// semidefinite and resolve the identity (all within kCompletenessTol).
class Pom {
public:
  explicit Pom(std::vector<Matrix> elements);

  int dim() const { return dim_; }
  int num_outcomes() const { return static_cast<int>(elems_.size()); }
  const Matrix& element(int outcome) const; // 1-based label

private:
  int dim_;
  std::vector<Matrix> elems_;
};

// pi_i = sum_k A_ik^dag A_ik.
Pom pom_from_kraus(const KrausSet& k);

// P(i) = tr(rho pi_i); clamped to [0, 1], summing to 1 within 1e-10.
std::vector<MeasurementOutcome> outcome_probabilities(const KrausSet& k,
                                                      const DensityOperator& rho);

// P(i) = sum_k |A_ik |s>|^2 for a pure state.
std::vector<MeasurementOutcome> outcome_probabilities(const KrausSet& k,
                                                      const StateVector& s);

// Post-measurement pure state A_i|s> / |A_i|s>| for a single-effect outcome.
StateVector collapse(const KrausSet& k, const StateVector& s, int outcome);

// Non-selective update rho -> sum_ik A_ik rho A_ik^dag.
DensityOperator apply_channel(const KrausSet& k, const DensityOperator& rho);

// Two-outcome atom measurement with error probability p in [0, 1/2]:
//   pi_1 = p|2><2| + (1-p)|1><1|,  pi_2 = p|1><1| + (1-p)|2><2|.
Pom two_level_pom(double p);

// Matching Hermitian operation elements (one per outcome):
//   A_1 = sqrt(p)|2><2| + sqrt(1-p)|1><1|, A_2 with p and 1-p swapped.
// A_1 A_2 = sqrt(p(1-p)) I, so opposite outcomes in succession cancel.
KrausSet two_level_kraus(double p);

} // namespace mmesim

#endif
