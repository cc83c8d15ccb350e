/*
   Copyright 2026 the mphstar authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#include "mphstar/transform.hpp"

#include <cmath>

namespace mphstar {

namespace {

void require_domain(Complex s, const char* where) {
  if (!(s.real() >= 0.0) || !std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw std::domain_error(std::string(where) + ": argument must satisfy Re(s) >= 0");
  }
}

// (s D0 - Q00), the resolvent-style factor shared by alpha(s), eta(s) and
// the atom transform.  Nonsingular for Re(s) >= 0 on valid models; the
// solver still guards against it.
ComplexMatrix zero_block_factor(const BlockDecomposition& bd, Complex s) {
  ComplexMatrix m = -bd.q00.cast<Complex>();
  m.diagonal() += s * bd.r2_zero.cast<Complex>();
  return m;
}

}  // namespace

TransformTriple triple_at(const BlockDecomposition& bd, Complex s) {
  require_domain(s, "triple_at");
  const Eigen::Index n = bd.n_plus;

  TransformTriple t;
  t.s = s;

  ComplexMatrix qpp_shifted = bd.qpp.cast<Complex>();
  qpp_shifted.diagonal() -= s * bd.r2_plus.cast<Complex>();

  if (bd.n_zero == 0) {
    t.alpha_s = bd.alpha_plus.cast<Complex>();
    t.w_s = qpp_shifted;
    t.eta_s = bd.eta_plus.cast<Complex>();
  } else {
    // One factorization for both right-hand sides [Q0+, eta0].
    ComplexMatrix rhs(bd.n_zero, n + 1);
    rhs.leftCols(n) = bd.q0p.cast<Complex>();
    rhs.col(n) = bd.eta0.cast<Complex>();
    const ComplexMatrix sol = solve(zero_block_factor(bd, s), rhs);

    t.alpha_s = bd.alpha0.cast<Complex>() * sol.leftCols(n) + bd.alpha_plus.cast<Complex>();
    t.w_s = qpp_shifted + bd.qp0.cast<Complex>() * sol.leftCols(n);
    t.eta_s = bd.qp0.cast<Complex>() * sol.col(n) + bd.eta_plus.cast<Complex>();
  }

  const ComplexVector inv_r1 = bd.r1_plus.cwiseInverse().cast<Complex>();
  t.w_s = inv_r1.asDiagonal() * t.w_s;
  t.eta_s = inv_r1.asDiagonal() * t.eta_s;
  return t;
}

Complex atom_transform(const BlockDecomposition& bd, Complex s) {
  require_domain(s, "atom_transform");
  if (bd.n_zero == 0) {
    return Complex(0.0, 0.0);
  }
  const ComplexMatrix v = solve(zero_block_factor(bd, s), ComplexMatrix(bd.eta0.cast<Complex>()));
  return (bd.alpha0.cast<Complex>() * v.col(0)).value();
}

Complex density_transform(const TransformTriple& triple, double y) {
  if (!(y > 0.0)) {
    throw std::domain_error("density_transform: y must be positive");
  }
  return (triple.alpha_s * expm(ComplexMatrix(triple.w_s * y)) * triple.eta_s).value();
}

Complex density_transform(const BlockDecomposition& bd, Complex s, double y) {
  return density_transform(triple_at(bd, s), y);
}

ComplexVector density_transform_grid(const BlockDecomposition& bd, Complex s, const Vector& ys) {
  if (ys.size() == 0) {
    throw std::invalid_argument("density_transform_grid: empty grid");
  }
  if (!(ys(0) > 0.0)) {
    throw std::domain_error("density_transform_grid: grid must be positive");
  }
  const double step = ys.size() > 1 ? ys(1) - ys(0) : 0.0;
  if (ys.size() > 1 && !(step > 0.0)) {
    throw std::invalid_argument("density_transform_grid: grid must be ascending");
  }
  for (Eigen::Index i = 1; i < ys.size(); ++i) {
    if (std::abs(ys(i) - ys(i - 1) - step) > 1e-9 * std::max(1.0, step)) {
      throw std::invalid_argument("density_transform_grid: grid must be equispaced");
    }
  }

  const TransformTriple t = triple_at(bd, s);
  ComplexRowVector row = t.alpha_s * expm(ComplexMatrix(t.w_s * ys(0)));
  ComplexMatrix step_exp;
  if (ys.size() > 1) {
    step_exp = expm(ComplexMatrix(t.w_s * step));
  }

  ComplexVector values(ys.size());
  for (Eigen::Index i = 0; i < ys.size(); ++i) {
    values(i) = (row * t.eta_s).value();
    if (i + 1 < ys.size()) {
      row = row * step_exp;
    }
  }
  return values;
}

Complex joint_lt_from_density(const BlockDecomposition& bd, Complex s1, Complex s2) {
  require_domain(s1, "joint_lt_from_density");
  require_domain(s2, "joint_lt_from_density");
  const TransformTriple t = triple_at(bd, s2);
  ComplexMatrix shifted = -t.w_s;
  shifted.diagonal().array() += s1;
  const ComplexMatrix x = solve(shifted, ComplexMatrix(t.eta_s));
  return bd.alpha_abs + atom_transform(bd, s2) + (t.alpha_s * x.col(0)).value();
}

Complex joint_lt_kulkarni(const MphStarModel& model, Complex s1, Complex s2) {
  require_domain(s1, "joint_lt_kulkarni");
  require_domain(s2, "joint_lt_kulkarni");
  if (model.num_rewards() != 2) {
    throw std::invalid_argument("joint_lt_kulkarni: model must be bivariate (k = 2)");
  }
  const Eigen::Index m = model.num_states();
  ComplexMatrix factor = -model.Q.cast<Complex>();
  factor.diagonal() += s1 * model.R.row(0).transpose().cast<Complex>() +
                       s2 * model.R.row(1).transpose().cast<Complex>();
  const Vector eta = -(model.Q * Vector::Ones(m));
  const ComplexMatrix x = solve(factor, ComplexMatrix(eta.cast<Complex>()));
  return model.alpha_abs + (model.alpha.cast<Complex>() * x.col(0)).value();
}

}  // namespace mphstar
