/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mmesim/qops.hpp"

#include <cmath>
#include <string>

namespace mmesim {

namespace {

void check_dim(int dim, const char* what) {
  if (dim < 1) {
    throw DimensionError(std::string(what) + ": dimension must be positive");
  }
  if (dim > kMaxDim) {
    throw DimensionError(std::string(what) + ": dimension " +
                         std::to_string(dim) + " exceeds cap " +
                         std::to_string(kMaxDim));
  }
}

void check_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix is not square");
  }
  check_dim(static_cast<int>(m.rows()), what);
}

} // namespace

StateVector::StateVector(CVector amplitudes, double norm_tol)
    : amps_(std::move(amplitudes)) {
  check_dim(static_cast<int>(amps_.size()), "StateVector");
  if (!amps_.allFinite()) {
    throw ValidationError("StateVector: non-finite amplitude");
  }
  const double n = amps_.norm();
  if (std::abs(n - 1.0) > norm_tol) {
    throw ValidationError("StateVector: norm " + std::to_string(n) +
                          " is not 1 within tolerance");
  }
}

StateVector StateVector::basis(int dim, int index) {
  check_dim(dim, "StateVector::basis");
  if (index < 0 || index >= dim) {
    throw ArgumentError("StateVector::basis: index out of range");
  }
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

DensityOperator::DensityOperator(Matrix m, double trace_tol, double herm_tol,
                                 double psd_tol)
    : mat_(std::move(m)), min_eig_(0.0) {
  check_square(mat_, "DensityOperator");
  if (!mat_.allFinite()) {
    throw ValidationError("DensityOperator: non-finite entry");
  }
  const double herr = hermiticity_error(mat_);
  if (herr > herm_tol) {
    throw ValidationError("DensityOperator: Hermiticity error " +
                          std::to_string(herr) + " exceeds tolerance");
  }
  const Complex tr = mat_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > trace_tol) {
    throw ValidationError("DensityOperator: trace deviates from 1 by " +
                          std::to_string(std::abs(tr - Complex(1.0, 0.0))));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (mat_ + mat_.adjoint()),
                                           Eigen::EigenvaluesOnly);
  min_eig_ = es.eigenvalues().minCoeff();
  if (min_eig_ < -psd_tol) {
    throw ValidationError("DensityOperator: eigenvalue " +
                          std::to_string(min_eig_) + " below PSD floor");
  }
}

double BlochVector::norm() const { return std::sqrt(u * u + v * v + w * w); }

bool BlochVector::physical(double tol) const {
  return u * u + v * v + w * w <= 1.0 + tol;
}

Matrix pauli(int k) {
  Matrix m = Matrix::Zero(2, 2);
  switch (k) {
  case 1:
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    break;
  case 2:
    m(0, 1) = Complex(0.0, 1.0);
    m(1, 0) = Complex(0.0, -1.0);
    break;
  case 3:
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    break;
  default:
    throw ArgumentError("pauli: index must be 1, 2 or 3");
  }
  return m;
}

DensityOperator density_from_state(const StateVector& s) {
  const CVector& a = s.amplitudes();
  return DensityOperator(a * a.adjoint());
}

BlochVector bloch_from_density(const DensityOperator& rho) {
  if (rho.dim() != 2) {
    throw DimensionError("bloch_from_density: two-level states only");
  }
  const Matrix& m = rho.matrix();
  BlochVector b;
  b.u = (m * pauli(1)).trace().real();
  b.v = (m * pauli(2)).trace().real();
  b.w = (m * pauli(3)).trace().real();
  return b;
}

BlochVector bloch_from_state(const StateVector& s) {
  if (s.dim() != 2) {
    throw DimensionError("bloch_from_state: two-level states only");
  }
  const Complex a = s.amplitude(0);
  const Complex c = s.amplitude(1);
  const Complex cross = std::conj(a) * c;
  BlochVector b;
  b.u = 2.0 * cross.real();
  b.v = -2.0 * cross.imag();
  b.w = std::norm(c) - std::norm(a);
  return b;
}

DensityOperator density_from_bloch(const BlochVector& b) {
  if (!b.physical()) {
    throw ValidationError("density_from_bloch: |b| > 1 breaks positivity");
  }
  Matrix m = 0.5 * (Matrix::Identity(2, 2) + b.u * pauli(1) + b.v * pauli(2) +
                    b.w * pauli(3));
  return DensityOperator(std::move(m));
}

StateVector state_from_bloch(const BlochVector& b) {
  if (std::abs(b.norm() - 1.0) > 1e-9) {
    throw ArgumentError("state_from_bloch: |b| must be 1 for a pure state");
  }
  CVector v(2);
  const double a2 = std::max(0.0, 0.5 * (1.0 - b.w));
  const double a = std::sqrt(a2);
  if (a < 1e-12) {
    v(0) = 0.0;
    v(1) = 1.0;
  } else {
    v(0) = a;
    v(1) = Complex(b.u, -b.v) / (2.0 * a);
  }
  v /= v.norm();
  return StateVector(std::move(v));
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  check_square(a, "commutator");
  check_square(b, "commutator");
  if (a.rows() != b.rows()) {
    throw DimensionError("commutator: operand dimensions differ");
  }
  return a * b - b * a;
}

Matrix dagger(const Matrix& a) { return a.adjoint(); }

Complex expectation(const Matrix& op, const StateVector& s) {
  check_square(op, "expectation");
  if (op.rows() != s.dim()) {
    throw DimensionError("expectation: operator/state dimensions differ");
  }
  return (s.amplitudes().adjoint() * op * s.amplitudes())(0, 0);
}

Complex trace(const Matrix& a) {
  check_square(a, "trace");
  return a.trace();
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("inner: state dimensions differ");
  }
  return (a.amplitudes().adjoint() * b.amplitudes())(0, 0);
}

double hermiticity_error(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("hermiticity_error: matrix is not square");
  }
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace mmesim
