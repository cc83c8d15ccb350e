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
#include "mphstar/analytics.hpp"

#include <cmath>

namespace mphstar {

namespace {

// Values and s-derivatives of alpha(s), W(s), eta(s) at s = 0, evaluated
// in real arithmetic.  Uses X = Q00^{-1} Q0+ from a single factorization;
// Q00^{-1} eta0 follows from the row-conservation identity
// eta0 = -(Q00 + Q0+) 1 as v = -(1 + X 1), which keeps the exit identity
// -T 1 = eta(0) tight independent of the conditioning of Q00.
struct ZeroExpansion {
  RowVector alpha;   // alpha(0)
  Matrix w;          // W(0)
  Vector eta;        // eta(0)
  RowVector dalpha;  // alpha'(0)
  Matrix dw;         // W'(0)
  Vector deta;       // eta'(0)
  double atom_mass;  // alpha_0 (-Q00^{-1}) eta_0
};

ZeroExpansion expand_at_zero(const BlockDecomposition& bd) {
  const Eigen::Index n = bd.n_plus;
  ZeroExpansion z;
  const Matrix d_plus = bd.r2_plus.asDiagonal();

  if (bd.n_zero == 0) {
    z.alpha = bd.alpha_plus;
    z.w = bd.qpp;
    z.eta = bd.eta_plus;
    z.dalpha = RowVector::Zero(n);
    z.dw = -d_plus;
    z.deta = Vector::Zero(n);
    z.atom_mass = 0.0;
  } else {
    const Matrix x = solve(bd.q00, bd.q0p);                                   // Q00^{-1} Q0+
    const Vector v = -(Vector::Ones(bd.n_zero) + x * Vector::Ones(n));        // Q00^{-1} eta0
    const RowVector y =
        solve(bd.q00.transpose(), Matrix(bd.alpha0.transpose())).transpose();  // alpha0 Q00^{-1}
    const Matrix g = solve(bd.q00.transpose(), Matrix(bd.qp0.transpose())).transpose();
    const Matrix d_zero_x = bd.r2_zero.asDiagonal() * x;

    z.alpha = bd.alpha_plus - bd.alpha0 * x;
    z.w = bd.qpp - bd.qp0 * x;
    z.eta = bd.eta_plus - bd.qp0 * v;
    z.dalpha = -(y.cwiseProduct(bd.r2_zero.transpose())) * x;
    z.dw = -d_plus - g * d_zero_x;
    z.deta = -g * bd.r2_zero.cwiseProduct(v);
    z.atom_mass = -(bd.alpha0 * v).value();
  }

  const Vector inv_r1 = bd.r1_plus.cwiseInverse();
  z.w = inv_r1.asDiagonal() * z.w;
  z.eta = inv_r1.cwiseProduct(z.eta);
  z.dw = inv_r1.asDiagonal() * z.dw;
  z.deta = inv_r1.cwiseProduct(z.deta);
  return z;
}

}  // namespace

PhDistribution marginal_Z1(const BlockDecomposition& bd) {
  const ZeroExpansion z = expand_at_zero(bd);
  PhDistribution ph;
  ph.beta = z.alpha;
  ph.T = z.w;
  ph.defect = bd.alpha_abs + z.atom_mass;
  return ph;
}

PhDistribution marginal_Z2(const MphStarModel& model) {
  if (model.num_rewards() != 2) {
    throw std::invalid_argument("marginal_Z2: model must be bivariate (k = 2)");
  }
  return marginal_Z1(block_decompose(pair_projection(model, 2, 1)));
}

double ph_cdf(const PhDistribution& ph, double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("ph_cdf: x must be nonnegative");
  }
  if (x == 0.0 || ph.order() == 0) {
    return ph.defect;
  }
  const Vector tail = expm(Matrix(ph.T * x)) * Vector::Ones(ph.order());
  return ph.defect + (ph.beta * (Vector::Ones(ph.order()) - tail)).value();
}

double ph_mean(const PhDistribution& ph) {
  if (ph.order() == 0) return 0.0;
  const Matrix u = solve(Matrix(-ph.T), Matrix(Vector::Ones(ph.order())));
  return (ph.beta * u.col(0)).value();
}

double ph_second_moment(const PhDistribution& ph) {
  if (ph.order() == 0) return 0.0;
  const Matrix u1 = solve(Matrix(-ph.T), Matrix(Vector::Ones(ph.order())));
  const Matrix u2 = solve(Matrix(-ph.T), u1);
  return 2.0 * (ph.beta * u2.col(0)).value();
}

double joint_moment(const BlockDecomposition& bd) {
  const ZeroExpansion z = expand_at_zero(bd);

  const Vector u1 = solve(z.w, Matrix(z.eta)).col(0);          // W^{-1} eta
  const Vector u2 = solve(z.w, Matrix(u1)).col(0);             // W^{-2} eta
  const RowVector l1 = solve(z.w.transpose(), Matrix(z.alpha.transpose())).transpose();
  const RowVector l2 = solve(z.w.transpose(), Matrix(l1.transpose())).transpose();

  // d/ds [alpha W^{-2} eta] with d/ds W^{-2} = -W^{-1} W' W^{-2} - W^{-2} W' W^{-1}.
  const double derivative = (z.dalpha * u2).value() - (l1 * (z.dw * u2)).value() -
                            (l2 * (z.dw * u1)).value() + (l2 * z.deta).value();
  return -derivative;
}

double joint_moment_oracle(const MphStarModel& model) {
  if (model.num_rewards() != 2) {
    throw std::invalid_argument("joint_moment_oracle: model must be bivariate (k = 2)");
  }
  const Matrix neg_q = -model.Q;
  const RowVector occ = solve(neg_q.transpose(), Matrix(model.alpha.transpose())).transpose();

  double total = 0.0;
  for (int first = 0; first < 2; ++first) {
    const int second = 1 - first;
    const RowVector weighted = occ.cwiseProduct(model.R.row(first));
    const RowVector propagated =
        solve(neg_q.transpose(), Matrix(weighted.transpose())).transpose();
    total += propagated.dot(model.R.row(second));
  }
  return total;
}

MomentSummary covariance(const MphStarModel& model) {
  if (model.num_rewards() != 2) {
    throw std::invalid_argument("covariance: model must be bivariate (k = 2)");
  }
  const BlockDecomposition bd = block_decompose(model);

  const RowVector occ =
      solve(Matrix(-model.Q.transpose()), Matrix(model.alpha.transpose())).transpose();

  MomentSummary s;
  s.mean_z1 = occ.dot(model.R.row(0));
  s.mean_z2 = occ.dot(model.R.row(1));
  s.cross_moment = joint_moment(bd);
  s.covariance = s.cross_moment - s.mean_z1 * s.mean_z2;

  const PhDistribution ph1 = marginal_Z1(bd);
  const PhDistribution ph2 = marginal_Z2(model);
  const double m1 = ph_mean(ph1);
  const double m2 = ph_mean(ph2);
  const double var1 = ph_second_moment(ph1) - m1 * m1;
  const double var2 = ph_second_moment(ph2) - m2 * m2;
  if (var1 > 0.0 && var2 > 0.0) {
    s.correlation = s.covariance / std::sqrt(var1 * var2);
  }
  return s;
}

}  // namespace mphstar
