/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mmesim/mme.hpp"

#include <cmath>
#include <string>

namespace mmesim {

namespace {

constexpr Complex kImag{0.0, 1.0};

// Output validation envelope for the integrator: trace may drift up to the
// renormalization threshold, eigenvalues down to the long-run floor.
constexpr double kPropTraceTol = 1e-9;
constexpr double kPropHermTol = 1e-10;
constexpr double kPropPsdTol = 1e-8;

} // namespace

MmeModel::MmeModel(Matrix hamiltonian, KrausSet kraus, double rate)
    : h_(std::move(hamiltonian)), kraus_(std::move(kraus)), rate_(rate) {
  if (h_.rows() != h_.cols()) {
    throw DimensionError("MmeModel: Hamiltonian is not square");
  }
  if (h_.rows() != kraus_.dim()) {
    throw DimensionError("MmeModel: Hamiltonian/Kraus dimensions differ");
  }
  if (!h_.allFinite()) {
    throw ValidationError("MmeModel: non-finite Hamiltonian entry");
  }
  if (hermiticity_error(h_) > kHermTol) {
    throw ValidationError("MmeModel: Hamiltonian is not Hermitian");
  }
  if (!(rate_ >= 0.0) || !std::isfinite(rate_)) {
    throw ArgumentError("MmeModel: measurement rate must be >= 0");
  }
}

Matrix generator(const MmeModel& m, const Matrix& rho) {
  if (rho.rows() != m.dim() || rho.cols() != m.dim()) {
    throw DimensionError("generator: state dimension mismatch");
  }
  Matrix out = -kImag * (m.hamiltonian() * rho - rho * m.hamiltonian());
  if (m.rate() > 0.0) {
    Matrix channel = Matrix::Zero(m.dim(), m.dim());
    const KrausSet& k = m.kraus();
    for (int i = 1; i <= k.num_outcomes(); ++i) {
      for (const Matrix& a : k.effects(i)) {
        channel += a * rho * a.adjoint();
      }
    }
    out += m.rate() * (channel - rho);
  }
  return out;
}

Matrix generator(const MmeModel& m, const DensityOperator& rho) {
  return generator(m, rho.matrix());
}

Matrix double_commutator_generator(const Matrix& observable, double kappa,
                                   const Matrix& hamiltonian,
                                   const Matrix& rho) {
  if (observable.rows() != observable.cols() ||
      hamiltonian.rows() != hamiltonian.cols() ||
      observable.rows() != hamiltonian.rows() ||
      rho.rows() != rho.cols() || rho.rows() != observable.rows()) {
    throw DimensionError("double_commutator_generator: dimension mismatch");
  }
  if (hermiticity_error(observable) > kHermTol) {
    throw ArgumentError(
        "double_commutator_generator: observable must be Hermitian");
  }
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw ArgumentError("double_commutator_generator: kappa must be >= 0");
  }
  Matrix out = -kImag * (hamiltonian * rho - rho * hamiltonian);
  out -= 0.5 * kappa * commutator(observable, commutator(observable, rho));
  return out;
}

Matrix lindblad_generator(const Matrix& hamiltonian,
                          const std::vector<std::pair<double, Matrix>>& channels,
                          const Matrix& rho) {
  Matrix out = -kImag * (hamiltonian * rho - rho * hamiltonian);
  for (const auto& [rate, b] : channels) {
    if (b.rows() != rho.rows() || b.cols() != rho.cols()) {
      throw DimensionError("lindblad_generator: channel dimension mismatch");
    }
    if (!(rate >= 0.0)) {
      throw ArgumentError("lindblad_generator: channel rate must be >= 0");
    }
    const Matrix bb = b.adjoint() * b;
    out += rate * (b * rho * b.adjoint() - 0.5 * (bb * rho + rho * bb));
  }
  return out;
}

PropagationResult propagate(const MmeModel& m, const DensityOperator& rho0,
                            double t_final, double dt,
                            double sample_interval) {
  if (rho0.dim() != m.dim()) {
    throw DimensionError("propagate: state dimension mismatch");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigurationError("propagate: dt must be positive");
  }
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw ConfigurationError("propagate: t_final must be >= 0");
  }
  if (dt * m.rate() > 0.1 + 1e-12) {
    throw ConfigurationError("propagate: dt * rate exceeds 0.1; reduce the "
                             "step size");
  }
  const double hnorm = m.hamiltonian().norm();
  if (dt * hnorm > 0.1 + 1e-12) {
    throw ConfigurationError("propagate: dt * |H| exceeds 0.1; reduce the "
                             "step size");
  }
  const double si = sample_interval > 0.0 ? sample_interval : dt;

  PropagationResult res;
  Matrix rho = rho0.matrix();

  auto rk4_step = [&m](Matrix& state, double h) {
    const Matrix k1 = generator(m, state);
    const Matrix k2 = generator(m, Matrix(state + 0.5 * h * k1));
    const Matrix k3 = generator(m, Matrix(state + 0.5 * h * k2));
    const Matrix k4 = generator(m, Matrix(state + h * k3));
    state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  auto emit = [&res](double t, Matrix& state) {
    const double trace_err = std::abs(state.trace() - Complex(1.0, 0.0));
    const double herm_err = hermiticity_error(state);
    res.max_trace_error = std::max(res.max_trace_error, trace_err);
    res.max_hermiticity_error = std::max(res.max_hermiticity_error, herm_err);
    if (trace_err > 1e-6 || herm_err > kPropHermTol) {
      throw NumericalError("propagate: state left the validity envelope at "
                           "t = " + std::to_string(t));
    }
    if (trace_err > kPropTraceTol) {
      state /= state.trace().real();
      if (res.warnings.size() < 100) {
        res.warnings.push_back("trace renormalized at t = " +
                               std::to_string(t) + " (drift " +
                               std::to_string(trace_err) + ")");
      }
    }
    try {
      DensityOperator out(state, kPropTraceTol, kPropHermTol, kPropPsdTol);
      res.min_eigenvalue = std::min(res.min_eigenvalue, out.min_eigenvalue());
      res.times.push_back(t);
      res.states.push_back(std::move(out));
    } catch (const ValidationError& e) {
      throw NumericalError(std::string("propagate: sampled state failed "
                                       "validation: ") + e.what());
    }
  };

  emit(0.0, rho);
  const auto n_samples = static_cast<long>(std::floor(t_final / si + 1e-9));
  double t = 0.0;
  for (long k = 1; k <= n_samples; ++k) {
    const double t_target = static_cast<double>(k) * si;
    const double span = t_target - t;
    const auto n_full = static_cast<long>(std::floor(span / dt + 1e-9));
    for (long i = 0; i < n_full; ++i) {
      rk4_step(rho, dt);
    }
    const double rem = span - static_cast<double>(n_full) * dt;
    if (rem > 1e-12 * std::max(1.0, dt)) {
      rk4_step(rho, rem);
    }
    t = t_target;
    emit(t, rho);
  }
  return res;
}

} // namespace mmesim
