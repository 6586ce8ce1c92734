/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MMESIM_QOPS_HPP
#define MMESIM_QOPS_HPP

#include <complex>
#include <Eigen/Dense>

#include "mmesim/errors.hpp"

namespace mmesim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Hilbert-space dimension cap for all dense objects.
inline constexpr int kMaxDim = 64;

// Default structural tolerances.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

// Basis convention for the two-level atom: index 0 is the lower state |1>,
// index 1 is the upper state |2>.  hbar = 1 throughout.

// Normalized pure state. Immutable; the constructor enforces unit norm.
class StateVector {
public:
  explicit StateVector(CVector amplitudes, double norm_tol = kNormTol);

  // Computational basis state |index> of the given dimension.
  static StateVector basis(int dim, int index);

  int dim() const { return static_cast<int>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  Complex amplitude(int i) const { return amps_(i); }

private:
  CVector amps_;
};

// Density operator. Immutable; the constructor enforces Hermiticity, unit
// trace and positive semidefiniteness (up to the given tolerances).
class DensityOperator {
public:
  explicit DensityOperator(Matrix m, double trace_tol = kTraceTol,
                           double herm_tol = kHermTol,
                           double psd_tol = kPsdTol);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }
  // Smallest eigenvalue found during validation.
  double min_eigenvalue() const { return min_eig_; }

private:
  Matrix mat_;
  double min_eig_;
};

// Bloch coordinates (u, v, w) of a two-level state: u tracks the in-phase
// dipole quadrature, v the out-of-phase quadrature, w the inversion.
// Physical states satisfy u^2 + v^2 + w^2 <= 1; rate-of-change values reuse
// the same aggregate and are not so constrained.
struct BlochVector {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  double norm() const;
  bool physical(double tol = 1e-10) const;
};

// Spin operator for the driven atom, k in {1, 2, 3}:
//   k=1: |1><2| + |2><1|          -> [[0, 1], [1, 0]]
//   k=2: i(|1><2| - |2><1|)       -> [[0, i], [-i, 0]]
//   k=3: |2><2| - |1><1|          -> [[-1, 0], [0, 1]]
// The triple is cyclic: s1 s2 = i s3 and so on.
Matrix pauli(int k);

// |s><s| as a validated density operator.
DensityOperator density_from_state(const StateVector& s);

// Bloch coordinates of a two-level density operator: u = tr(rho s1), etc.
BlochVector bloch_from_density(const DensityOperator& rho);

// Bloch coordinates of a two-level pure state (unit-length result).
BlochVector bloch_from_state(const StateVector& s);

// (I + u s1 + v s2 + w s3) / 2. Requires |b| <= 1.
DensityOperator density_from_bloch(const BlochVector& b);

// Pure state with the given unit-length Bloch vector (global phase fixed by
// taking the |1> amplitude real and nonnegative).
StateVector state_from_bloch(const BlochVector& b);

// a b - b a.
Matrix commutator(const Matrix& a, const Matrix& b);

// Conjugate transpose.
Matrix dagger(const Matrix& a);

// <s| op |s>.
Complex expectation(const Matrix& op, const StateVector& s);

// Matrix trace.
Complex trace(const Matrix& a);

// <a|b>.
Complex inner(const StateVector& a, const StateVector& b);

// Max absolute deviation from Hermiticity.
double hermiticity_error(const Matrix& a);

} // namespace mmesim

#endif
