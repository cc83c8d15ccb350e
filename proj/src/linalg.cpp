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
#include "mphstar/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

namespace mphstar {

namespace {

template <typename Mat>
void require_finite(const Mat& a, const char* where) {
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(where) + ": non-finite matrix entries");
  }
}

template <typename Mat>
Mat solve_impl(const Mat& a, const Mat& b) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("solve: coefficient matrix must be square");
  }
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("solve: right-hand side has mismatched row count");
  }
  require_finite(a, "solve");
  require_finite(b, "solve");
  if (a.rows() == 0) {
    return Mat(0, b.cols());
  }
  Eigen::PartialPivLU<Mat> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > std::numeric_limits<double>::epsilon())) {
    throw SingularMatrixError(rcond);
  }
  return lu.solve(b);
}

// Degree-13 Padé numerator coefficients; theta_13 is the largest 1-norm
// for which the unscaled approximant stays within unit roundoff.
constexpr double kPade13[] = {
    64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
    129060195264000.,   10559470521600.,    670442572800.,     33522128640.,
    1323241920.,        40840800.,          960960.,           16380.,
    182.,               1.};
constexpr double kTheta13 = 5.371920351148152;

template <typename Mat>
Mat expm_impl(const Mat& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("expm: matrix must be square");
  }
  require_finite(a, "expm");
  const Eigen::Index n = a.rows();
  if (n == 0) {
    return Mat(0, 0);
  }

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) {
    std::frexp(norm1 / kTheta13, &squarings);
    if (squarings < 0) squarings = 0;
  }
  const Mat as = a * std::ldexp(1.0, -squarings);

  const Mat id = Mat::Identity(n, n);
  const Mat a2 = as * as;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;
  const Mat u = as * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) +
                      kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 + kPade13[1] * id);
  const Mat v = a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) +
                kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 + kPade13[0] * id;

  // exp(as) ~ (v - u)^{-1} (v + u), then undo the scaling by squaring.
  Mat result = Eigen::PartialPivLU<Mat>(v - u).solve(Mat(v + u));
  for (int i = 0; i < squarings; ++i) {
    result = result * result;
  }
  return result;
}

}  // namespace

SingularMatrixError::SingularMatrixError(double rcond_estimate)
    : std::runtime_error("matrix is singular to working precision (rcond ~ " +
                         std::to_string(rcond_estimate) + ")"),
      rcond_(rcond_estimate) {}

Matrix solve(const Matrix& a, const Matrix& b) { return solve_impl(a, b); }

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) { return solve_impl(a, b); }

Matrix expm(const Matrix& a) { return expm_impl(a); }

ComplexMatrix expm(const ComplexMatrix& a) { return expm_impl(a); }

double spectral_abscissa_bound(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("spectral_abscissa_bound: matrix must be square");
  }
  require_finite(a, "spectral_abscissa_bound");
  if (a.rows() == 0) {
    return -std::numeric_limits<double>::infinity();
  }
  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() == Eigen::Success) {
    return es.eigenvalues().real().maxCoeff();
  }
  double bound = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double radius = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j != i) radius += std::abs(a(i, j));
    }
    bound = std::max(bound, a(i, i) + radius);
  }
  return bound;
}

}  // namespace mphstar
