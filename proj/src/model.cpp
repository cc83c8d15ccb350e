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
#include "mphstar/model.hpp"

#include <cmath>
#include <sstream>

namespace mphstar {

namespace {

constexpr double kMassTol = 1e-12;

void require_consistent_shapes(const MphStarModel& model) {
  std::ostringstream oss;
  if (model.Q.rows() == 0) {
    throw std::invalid_argument("model: at least one transient state is required");
  }
  if (model.Q.rows() != model.Q.cols()) {
    oss << "model: Q must be square, got " << model.Q.rows() << "x" << model.Q.cols();
    throw std::invalid_argument(oss.str());
  }
  if (model.alpha.size() != model.Q.rows()) {
    oss << "model: alpha has length " << model.alpha.size() << " but Q has "
        << model.Q.rows() << " states";
    throw std::invalid_argument(oss.str());
  }
  if (model.R.rows() == 0) {
    throw std::invalid_argument("model: at least one reward row is required");
  }
  if (model.R.cols() != model.Q.rows()) {
    oss << "model: R has " << model.R.cols() << " columns but Q has " << model.Q.rows()
        << " states";
    throw std::invalid_argument(oss.str());
  }
}

std::string entry(const char* name, Eigen::Index i, double v) {
  std::ostringstream oss;
  oss << name << "[" << i + 1 << "] = " << v;
  return oss.str();
}

std::string entry2(const char* name, Eigen::Index i, Eigen::Index j, double v) {
  std::ostringstream oss;
  oss << name << "[" << i + 1 << "," << j + 1 << "] = " << v;
  return oss.str();
}

}  // namespace

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream oss;
  for (const auto& v : violations) {
    oss << v.invariant << ": " << v.detail << "\n";
  }
  return oss.str();
}

ValidationReport validate(const MphStarModel& model) {
  require_consistent_shapes(model);

  ValidationReport report;
  auto flag = [&report](std::string invariant, std::string detail) {
    report.violations.push_back({std::move(invariant), std::move(detail)});
  };

  const Eigen::Index m = model.num_states();
  const Eigen::Index k = model.num_rewards();

  bool finite = true;
  if (!model.alpha.allFinite() || !std::isfinite(model.alpha_abs) || !model.Q.allFinite() ||
      !model.R.allFinite()) {
    flag("finite_entries", "model contains NaN or infinite entries");
    finite = false;
  }

  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(model.alpha(i) >= 0.0)) {
      flag("alpha_nonnegative", entry("alpha", i, model.alpha(i)));
    }
  }
  if (finite) {
    const double mass = model.alpha.sum() + model.alpha_abs;
    if (std::abs(mass - 1.0) > kMassTol) {
      std::ostringstream oss;
      oss << "sum(alpha) + alpha_abs = " << mass;
      flag("total_mass", oss.str());
    }
  }
  if (!(model.alpha_abs >= 0.0 && model.alpha_abs < 1.0)) {
    std::ostringstream oss;
    oss << "alpha_abs = " << model.alpha_abs << " must lie in [0, 1)";
    flag("alpha_abs_range", oss.str());
  }

  const double q_scale = finite ? std::max(1.0, model.Q.cwiseAbs().maxCoeff()) : 1.0;
  bool generator_shape_ok = true;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(model.Q(i, i) < 0.0)) {
      flag("diagonal_negative", entry2("Q", i, i, model.Q(i, i)));
      generator_shape_ok = false;
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j != i && !(model.Q(i, j) >= 0.0)) {
        flag("offdiagonal_nonnegative", entry2("Q", i, j, model.Q(i, j)));
        generator_shape_ok = false;
      }
    }
    if (finite) {
      const double row_sum = model.Q.row(i).sum();
      if (row_sum > kMassTol * q_scale) {
        flag("row_sums_nonpositive", entry("row sum", i, row_sum));
        generator_shape_ok = false;
      }
    }
  }

  // Transience: mean absorption times solve Q x = -1 and must be finite
  // and positive.  Skipped when the sign pattern is already broken.
  if (finite && generator_shape_ok) {
    try {
      const Matrix x = solve(model.Q, Matrix(-Vector::Ones(m)));
      for (Eigen::Index i = 0; i < m; ++i) {
        if (!(x(i, 0) > 0.0) || !std::isfinite(x(i, 0))) {
          flag("transient", entry("mean absorption time", i, x(i, 0)));
        }
      }
    } catch (const SingularMatrixError&) {
      flag("transient", "Q is singular: some state never reaches absorption");
    }
  }

  for (Eigen::Index i = 0; i < k; ++i) {
    bool has_positive = false;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (!(model.R(i, j) >= 0.0)) {
        flag("reward_nonnegative", entry2("R", i, j, model.R(i, j)));
      } else if (model.R(i, j) > 0.0) {
        has_positive = true;
      }
    }
    if (!has_positive) {
      std::ostringstream oss;
      oss << "reward row " << i + 1
          << " has no positive entry, so coordinate " << i + 1 << " would be identically 0";
      flag("reward_row_positive", oss.str());
    }
  }

  return report;
}

MphStarModel pair_projection(const MphStarModel& model, int i, int j) {
  const Eigen::Index k = model.num_rewards();
  if (i < 1 || j < 1 || i > k || j > k) {
    throw std::invalid_argument("pair_projection: reward index out of range");
  }
  if (i == j) {
    throw std::invalid_argument("pair_projection: reward indices must differ");
  }
  MphStarModel pair;
  pair.alpha = model.alpha;
  pair.alpha_abs = model.alpha_abs;
  pair.Q = model.Q;
  pair.R.resize(2, model.num_states());
  pair.R.row(0) = model.R.row(i - 1);
  pair.R.row(1) = model.R.row(j - 1);
  return pair;
}

BlockDecomposition block_decompose(const MphStarModel& model) {
  if (model.num_rewards() != 2) {
    throw std::invalid_argument("block_decompose: model must be bivariate (k = 2)");
  }
  const ValidationReport report = validate(model);
  if (!report.ok()) {
    throw std::invalid_argument("block_decompose: invalid model:\n" + report.to_string());
  }

  const Eigen::Index m = model.num_states();
  BlockDecomposition bd;
  bd.alpha_abs = model.alpha_abs;
  for (Eigen::Index s = 0; s < m; ++s) {
    if (model.R(0, s) == 0.0) bd.perm.push_back(s);
  }
  bd.n_zero = static_cast<Eigen::Index>(bd.perm.size());
  for (Eigen::Index s = 0; s < m; ++s) {
    if (model.R(0, s) != 0.0) bd.perm.push_back(s);
  }
  bd.n_plus = m - bd.n_zero;

  const Vector eta = -(model.Q * Vector::Ones(m));

  const Eigen::Index k0 = bd.n_zero;
  const Eigen::Index n = bd.n_plus;
  bd.q00.resize(k0, k0);
  bd.q0p.resize(k0, n);
  bd.qp0.resize(n, k0);
  bd.qpp.resize(n, n);
  bd.alpha0.resize(k0);
  bd.alpha_plus.resize(n);
  bd.eta0.resize(k0);
  bd.eta_plus.resize(n);
  bd.r1_plus.resize(n);
  bd.r2_plus.resize(n);
  bd.r2_zero.resize(k0);

  for (Eigen::Index p = 0; p < m; ++p) {
    const Eigen::Index sp = bd.perm[p];
    if (p < k0) {
      bd.alpha0(p) = model.alpha(sp);
      bd.eta0(p) = eta(sp);
      bd.r2_zero(p) = model.R(1, sp);
    } else {
      bd.alpha_plus(p - k0) = model.alpha(sp);
      bd.eta_plus(p - k0) = eta(sp);
      bd.r1_plus(p - k0) = model.R(0, sp);
      bd.r2_plus(p - k0) = model.R(1, sp);
    }
    for (Eigen::Index q = 0; q < m; ++q) {
      const Eigen::Index sq = bd.perm[q];
      const double v = model.Q(sp, sq);
      if (p < k0 && q < k0)
        bd.q00(p, q) = v;
      else if (p < k0)
        bd.q0p(p, q - k0) = v;
      else if (q < k0)
        bd.qp0(p - k0, q) = v;
      else
        bd.qpp(p - k0, q - k0) = v;
    }
  }
  return bd;
}

MphStarModel build_from_mph(const Matrix& a12, const Matrix& b1, const Matrix& b2,
                            const Matrix& a1, const Matrix& a2, const RowVector& alpha,
                            double alpha_abs) {
  const Eigen::Index n12 = a12.rows();
  const Eigen::Index n1 = a1.rows();
  const Eigen::Index n2 = a2.rows();
  if (a12.cols() != n12 || a1.cols() != n1 || a2.cols() != n2) {
    throw std::invalid_argument("build_from_mph: diagonal blocks must be square");
  }
  if (b1.rows() != n12 || b1.cols() != n1) {
    throw std::invalid_argument("build_from_mph: b1 must be |both| x |first-only|");
  }
  if (b2.rows() != n12 || b2.cols() != n2) {
    throw std::invalid_argument("build_from_mph: b2 must be |both| x |second-only|");
  }
  const Eigen::Index m = n12 + n1 + n2;
  if (alpha.size() != m) {
    throw std::invalid_argument("build_from_mph: alpha must cover all three blocks");
  }

  MphStarModel model;
  model.alpha = alpha;
  model.alpha_abs = alpha_abs;
  model.Q = Matrix::Zero(m, m);
  model.Q.topLeftCorner(n12, n12) = a12;
  model.Q.block(0, n12, n12, n1) = b1;
  model.Q.block(0, n12 + n1, n12, n2) = b2;
  model.Q.block(n12, n12, n1, n1) = a1;
  model.Q.bottomRightCorner(n2, n2) = a2;

  model.R = Matrix::Zero(2, m);
  model.R.row(0).head(n12 + n1).setOnes();
  model.R.row(1).head(n12).setOnes();
  model.R.row(1).tail(n2).setOnes();

  const ValidationReport report = validate(model);
  if (!report.ok()) {
    throw std::invalid_argument("build_from_mph: assembled model is invalid:\n" +
                                report.to_string());
  }
  return model;
}

}  // namespace mphstar
