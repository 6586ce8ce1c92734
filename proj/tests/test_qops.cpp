/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <cmath>
#include <complex>

#include <doctest.h>

#include "mmesim/qops.hpp"

using namespace mmesim;

namespace {

const Complex kI(0.0, 1.0);

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

StateVector make_state(Complex a, Complex b) {
  CVector v(2);
  v << a, b;
  return StateVector(std::move(v));
}

} // namespace

TEST_CASE("spin operators satisfy the cyclic algebra") {
  const Matrix s1 = pauli(1);
  const Matrix s2 = pauli(2);
  const Matrix s3 = pauli(3);
  const Matrix id = Matrix::Identity(2, 2);

  CHECK(max_abs_diff(s1 * s2, kI * s3) < 1e-15);
  CHECK(max_abs_diff(s2 * s3, kI * s1) < 1e-15);
  CHECK(max_abs_diff(s3 * s1, kI * s2) < 1e-15);
  CHECK(max_abs_diff(s1 * s1, id) < 1e-15);
  CHECK(max_abs_diff(s2 * s2, id) < 1e-15);
  CHECK(max_abs_diff(s3 * s3, id) < 1e-15);

  for (int k = 1; k <= 3; ++k) {
    CHECK(hermiticity_error(pauli(k)) == 0.0);
    CHECK(std::abs(trace(pauli(k))) == 0.0);
  }
  // Sign convention fixed by the basis order (index 0 = lower state):
  // the inversion operator weights the upper state +1.
  CHECK(s3(0, 0).real() == -1.0);
  CHECK(s3(1, 1).real() == 1.0);

  CHECK_THROWS_AS(pauli(0), ArgumentError);
  CHECK_THROWS_AS(pauli(4), ArgumentError);
}

TEST_CASE("commutators") {
  CHECK(max_abs_diff(commutator(pauli(1), pauli(2)), 2.0 * kI * pauli(3)) <
        1e-15);
  CHECK(max_abs_diff(commutator(pauli(3), pauli(3)), Matrix::Zero(2, 2)) ==
        0.0);
  CHECK_THROWS_AS(commutator(pauli(1), Matrix::Identity(3, 3)),
                  DimensionError);
}

TEST_CASE("state vector validation") {
  CHECK_NOTHROW(make_state(1.0, 0.0));
  CHECK_NOTHROW(make_state(std::sqrt(0.5), std::sqrt(0.5)));

  CVector too_long(2);
  too_long << 1.0, 1.0;
  CHECK_THROWS_AS(StateVector{too_long}, ValidationError);

  CVector slightly_off(2);
  slightly_off << 1.0 + 1e-13, 0.0;
  CHECK_NOTHROW(StateVector{slightly_off}); // within default tolerance

  CVector bad(1);
  bad << std::nan("");
  CHECK_THROWS_AS(StateVector{bad}, ValidationError);

  CHECK_THROWS_AS(StateVector(CVector::Zero(0)), DimensionError);
  CVector huge = CVector::Zero(kMaxDim + 1);
  huge(0) = 1.0;
  CHECK_THROWS_AS(StateVector{huge}, DimensionError);

  const StateVector ground = StateVector::basis(2, 0);
  CHECK(ground.dim() == 2);
  CHECK(ground.amplitude(0) == Complex(1.0, 0.0));
  CHECK_THROWS_AS(StateVector::basis(2, 2), ArgumentError);
  CHECK_THROWS_AS(StateVector::basis(2, -1), ArgumentError);
}

TEST_CASE("density operator validation") {
  Matrix ok(2, 2);
  ok << 0.5, 0.0, 0.0, 0.5;
  CHECK_NOTHROW(DensityOperator{ok});

  Matrix non_herm(2, 2);
  non_herm << 0.5, 0.1, 0.0, 0.5;
  CHECK_THROWS_AS(DensityOperator{non_herm}, ValidationError);

  Matrix bad_trace(2, 2);
  bad_trace << 0.6, 0.0, 0.0, 0.5;
  CHECK_THROWS_AS(DensityOperator{bad_trace}, ValidationError);

  Matrix indefinite(2, 2);
  indefinite << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityOperator{indefinite}, ValidationError);

  // Tolerances are caller-tunable: the same slightly negative state is
  // rejected at the default floor and accepted at a looser one.
  Matrix barely(2, 2);
  barely << 1.0 + 5e-9, 0.0, 0.0, -5e-9;
  CHECK_THROWS_AS(DensityOperator{barely}, ValidationError);
  CHECK_NOTHROW(DensityOperator(barely, 1e-7, 1e-12, 1e-8));

  const DensityOperator rho(ok);
  CHECK(rho.dim() == 2);
  CHECK(rho.min_eigenvalue() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("pure-state Bloch coordinates: frozen values") {
  // Poles: basis order puts the lower state at w = -1.
  const BlochVector south = bloch_from_state(StateVector::basis(2, 0));
  CHECK(south.u == 0.0);
  CHECK(south.v == 0.0);
  CHECK(south.w == -1.0);
  const BlochVector north = bloch_from_state(StateVector::basis(2, 1));
  CHECK(north.w == 1.0);

  // Equator, real superposition (|1> + |2>)/sqrt(2) -> (1, 0, 0).
  const double r = std::sqrt(0.5);
  const BlochVector bx = bloch_from_state(make_state(r, r));
  CHECK(bx.u == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bx.v == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(bx.w == doctest::Approx(0.0).epsilon(1e-15));

  // Equator, imaginary superposition (|1> + i|2>)/sqrt(2) -> (0, -1, 0).
  const BlochVector by = bloch_from_state(make_state(r, r * kI));
  CHECK(by.u == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(by.v == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(by.w == doctest::Approx(0.0).epsilon(1e-15));

  // Mostly excited state 0.1|1> + sqrt(0.99)|2>: w = 0.98 exactly,
  // u = 2 * 0.1 * sqrt(0.99).
  const BlochVector be = bloch_from_state(make_state(0.1, std::sqrt(0.99)));
  CHECK(be.w == doctest::Approx(0.98).epsilon(1e-14));
  CHECK(be.u == doctest::Approx(0.198997487421324).epsilon(1e-13));
  CHECK(be.v == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("state and density Bloch routes agree") {
  const Complex amps[4][2] = {
      {Complex(1.0, 0.0), Complex(0.0, 0.0)},
      {Complex(std::sqrt(0.5), 0.0), Complex(0.0, std::sqrt(0.5))},
      {Complex(0.6, 0.0), Complex(0.48, 0.64)},
      {Complex(0.1, 0.0), Complex(std::sqrt(0.99), 0.0)},
  };
  for (const auto& a : amps) {
    const StateVector s = make_state(a[0], a[1]);
    const BlochVector b1 = bloch_from_state(s);
    const BlochVector b2 = bloch_from_density(density_from_state(s));
    CHECK(b1.u == doctest::Approx(b2.u).epsilon(1e-13));
    CHECK(b1.v == doctest::Approx(b2.v).epsilon(1e-13));
    CHECK(b1.w == doctest::Approx(b2.w).epsilon(1e-13));
    CHECK(b1.norm() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("density from Bloch vector: frozen matrix") {
  const DensityOperator rho = density_from_bloch({0.6, 0.0, 0.8});
  const Matrix& m = rho.matrix();
  // (I + 0.6 s1 + 0.8 s3) / 2 with the lower state first.
  CHECK(m(0, 0).real() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(m(1, 1).real() == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(m(0, 1).real() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(m(0, 1).imag() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rho.min_eigenvalue() == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(density_from_bloch({0.8, 0.0, 0.8}), ValidationError);
}

TEST_CASE("Bloch round trips") {
  const BlochVector mixed{0.2, -0.3, 0.4};
  const BlochVector back = bloch_from_density(density_from_bloch(mixed));
  CHECK(back.u == doctest::Approx(mixed.u).epsilon(1e-14));
  CHECK(back.v == doctest::Approx(mixed.v).epsilon(1e-14));
  CHECK(back.w == doctest::Approx(mixed.w).epsilon(1e-14));

  const BlochVector pure{0.6, 0.0, 0.8};
  const StateVector s = state_from_bloch(pure);
  CHECK(s.amplitude(0).imag() == 0.0); // phase convention
  CHECK(s.amplitude(0).real() == doctest::Approx(std::sqrt(0.1)));
  CHECK(s.amplitude(1).real() == doctest::Approx(0.6 / (2 * std::sqrt(0.1))));
  const BlochVector round = bloch_from_state(s);
  CHECK(round.u == doctest::Approx(pure.u).epsilon(1e-13));
  CHECK(round.v == doctest::Approx(pure.v).epsilon(1e-13));
  CHECK(round.w == doctest::Approx(pure.w).epsilon(1e-13));

  // Poles, including the branch with a vanishing lower amplitude.
  CHECK(state_from_bloch({0.0, 0.0, 1.0}).amplitude(1) == Complex(1.0, 0.0));
  CHECK(state_from_bloch({0.0, 0.0, -1.0}).amplitude(0) == Complex(1.0, 0.0));

  CHECK_THROWS_AS(state_from_bloch({0.2, 0.0, 0.4}), ArgumentError);
  CHECK(!BlochVector{0.6, 0.8, 0.01}.physical());
  CHECK(BlochVector{0.6, 0.8, 0.0}.physical());
}

TEST_CASE("expectation, inner product and trace") {
  const StateVector plus = make_state(std::sqrt(0.5), std::sqrt(0.5));
  CHECK(expectation(pauli(3), plus).real() ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(expectation(pauli(1), plus).real() ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(expectation(pauli(3), StateVector::basis(2, 1)).real() == 1.0);

  const StateVector g = StateVector::basis(2, 0);
  const StateVector e = StateVector::basis(2, 1);
  CHECK(std::abs(inner(g, e)) == 0.0);
  CHECK(inner(g, g) == Complex(1.0, 0.0));

  CHECK_THROWS_AS(expectation(Matrix::Identity(3, 3), plus), DimensionError);

  Matrix upper(2, 2);
  upper << 0.0, 1.0, 0.0, 0.0;
  CHECK(hermiticity_error(upper) == 1.0);
  CHECK(trace(upper) == Complex(0.0, 0.0));
}
