/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mmesim/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mmesim {

namespace {

constexpr double kZeroProb = 1e-28;

void check_p(double p, const char* what) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw ArgumentError(std::string(what) +
                        ": error probability must lie in [0, 1/2]");
  }
}

} // namespace

KrausSet::KrausSet(int dim, std::vector<std::vector<Matrix>> outcome_groups)
    : dim_(dim), groups_(std::move(outcome_groups)) {
  if (dim_ < 1 || dim_ > kMaxDim) {
    throw DimensionError("KrausSet: dimension out of range");
  }
  if (groups_.empty()) {
    throw ArgumentError("KrausSet: at least one outcome group required");
  }
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (const auto& group : groups_) {
    if (group.empty()) {
      throw ArgumentError("KrausSet: empty outcome group");
    }
    for (const Matrix& a : group) {
      if (a.rows() != dim_ || a.cols() != dim_) {
        throw DimensionError("KrausSet: effect dimension mismatch");
      }
      if (!a.allFinite()) {
        throw ValidationError("KrausSet: non-finite effect entry");
      }
      sum += a.adjoint() * a;
    }
  }
  const double err =
      (sum - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
  if (err > kCompletenessTol) {
    throw CompletenessError("KrausSet: sum A^dag A deviates from I by " +
                            std::to_string(err));
  }
}

const std::vector<Matrix>& KrausSet::effects(int outcome) const {
  if (outcome < 1 || outcome > num_outcomes()) {
    throw ArgumentError("KrausSet: outcome label out of range");
  }
  return groups_[static_cast<std::size_t>(outcome - 1)];
}

bool KrausSet::single_effect(int outcome) const {
  return effects(outcome).size() == 1;
}

Pom::Pom(std::vector<Matrix> elements) : dim_(0), elems_(std::move(elements)) {
  if (elems_.empty()) {
    throw ArgumentError("Pom: at least one element required");
  }
  dim_ = static_cast<int>(elems_.front().rows());
  if (dim_ < 1 || dim_ > kMaxDim) {
    throw DimensionError("Pom: dimension out of range");
  }
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (const Matrix& e : elems_) {
    if (e.rows() != dim_ || e.cols() != dim_) {
      throw DimensionError("Pom: element dimension mismatch");
    }
    if (!e.allFinite()) {
      throw ValidationError("Pom: non-finite element entry");
    }
    if (hermiticity_error(e) > kCompletenessTol) {
      throw ValidationError("Pom: element is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (e + e.adjoint()),
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kCompletenessTol) {
      throw ValidationError("Pom: element is not positive semidefinite");
    }
    sum += e;
  }
  const double err =
      (sum - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
  if (err > kCompletenessTol) {
    throw CompletenessError("Pom: elements deviate from resolving I by " +
                            std::to_string(err));
  }
}

const Matrix& Pom::element(int outcome) const {
  if (outcome < 1 || outcome > num_outcomes()) {
    throw ArgumentError("Pom: outcome label out of range");
  }
  return elems_[static_cast<std::size_t>(outcome - 1)];
}

Pom pom_from_kraus(const KrausSet& k) {
  std::vector<Matrix> elems;
  elems.reserve(static_cast<std::size_t>(k.num_outcomes()));
  for (int i = 1; i <= k.num_outcomes(); ++i) {
    Matrix pi = Matrix::Zero(k.dim(), k.dim());
    for (const Matrix& a : k.effects(i)) {
      pi += a.adjoint() * a;
    }
    // Symmetrize away round-off so the element validates as Hermitian.
    elems.push_back(0.5 * (pi + pi.adjoint()));
  }
  return Pom(std::move(elems));
}

std::vector<MeasurementOutcome> outcome_probabilities(const KrausSet& k,
                                                      const DensityOperator& rho) {
  if (rho.dim() != k.dim()) {
    throw DimensionError("outcome_probabilities: dimension mismatch");
  }
  std::vector<MeasurementOutcome> out;
  out.reserve(static_cast<std::size_t>(k.num_outcomes()));
  double sum = 0.0;
  for (int i = 1; i <= k.num_outcomes(); ++i) {
    double p = 0.0;
    for (const Matrix& a : k.effects(i)) {
      p += (a * rho.matrix() * a.adjoint()).trace().real();
    }
    p = std::clamp(p, 0.0, 1.0);
    sum += p;
    out.push_back({i, p});
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw NumericalError("outcome_probabilities: probabilities sum to " +
                         std::to_string(sum));
  }
  return out;
}

std::vector<MeasurementOutcome> outcome_probabilities(const KrausSet& k,
                                                      const StateVector& s) {
  if (s.dim() != k.dim()) {
    throw DimensionError("outcome_probabilities: dimension mismatch");
  }
  std::vector<MeasurementOutcome> out;
  out.reserve(static_cast<std::size_t>(k.num_outcomes()));
  double sum = 0.0;
  for (int i = 1; i <= k.num_outcomes(); ++i) {
    double p = 0.0;
    for (const Matrix& a : k.effects(i)) {
      p += (a * s.amplitudes()).squaredNorm();
    }
    p = std::clamp(p, 0.0, 1.0);
    sum += p;
    out.push_back({i, p});
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw NumericalError("outcome_probabilities: probabilities sum to " +
                         std::to_string(sum));
  }
  return out;
}

StateVector collapse(const KrausSet& k, const StateVector& s, int outcome) {
  if (s.dim() != k.dim()) {
    throw DimensionError("collapse: dimension mismatch");
  }
  if (!k.single_effect(outcome)) {
    throw ArgumentError("collapse: outcome has several effects; pure-state "
                        "collapse is defined for single-effect outcomes only");
  }
  CVector amp = k.effects(outcome).front() * s.amplitudes();
  const double p = amp.squaredNorm();
  if (p < kZeroProb) {
    throw ImpossibleOutcomeError("collapse: outcome has zero probability");
  }
  amp /= std::sqrt(p);
  return StateVector(std::move(amp));
}

DensityOperator apply_channel(const KrausSet& k, const DensityOperator& rho) {
  if (rho.dim() != k.dim()) {
    throw DimensionError("apply_channel: dimension mismatch");
  }
  Matrix out = Matrix::Zero(k.dim(), k.dim());
  for (int i = 1; i <= k.num_outcomes(); ++i) {
    for (const Matrix& a : k.effects(i)) {
      out += a * rho.matrix() * a.adjoint();
    }
  }
  // Trace drift is bounded by the set's completeness error, which may exceed
  // the strict type default; validate against that envelope instead.
  return DensityOperator(std::move(out), 1e-9, kHermTol, kPsdTol);
}

Pom two_level_pom(double p) {
  check_p(p, "two_level_pom");
  Matrix pi1 = Matrix::Zero(2, 2);
  pi1(0, 0) = 1.0 - p;
  pi1(1, 1) = p;
  Matrix pi2 = Matrix::Zero(2, 2);
  pi2(0, 0) = p;
  pi2(1, 1) = 1.0 - p;
  return Pom({std::move(pi1), std::move(pi2)});
}

KrausSet two_level_kraus(double p) {
  check_p(p, "two_level_kraus");
  const double sp = std::sqrt(p);
  const double sq = std::sqrt(1.0 - p);
  Matrix a1 = Matrix::Zero(2, 2);
  a1(0, 0) = sq;
  a1(1, 1) = sp;
  Matrix a2 = Matrix::Zero(2, 2);
  a2(0, 0) = sp;
  a2(1, 1) = sq;
  return KrausSet(2, {{std::move(a1)}, {std::move(a2)}});
}

} // namespace mmesim
