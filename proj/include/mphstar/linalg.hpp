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
#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace mphstar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using ComplexRowVector = Eigen::RowVectorXcd;

/// Thrown when a linear solve hits a matrix that is singular to working
/// precision.  Carries the reciprocal condition estimate from the LU
/// factorization.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(double rcond_estimate);
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

/// Solves A X = B by LU with partial pivoting.  Rejects non-finite input
/// and throws SingularMatrixError when the reciprocal condition estimate
/// drops below unit roundoff.
Matrix solve(const Matrix& a, const Matrix& b);
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix exponential by scaling and squaring with the degree-13 Padé
/// approximant, thresholds from Higham, "The scaling and squaring method
/// for the matrix exponential revisited", SIAM J. Matrix Anal. Appl. 26
/// (2005).  The degree is fixed at 13; only the scaling step adapts.
Matrix expm(const Matrix& a);
ComplexMatrix expm(const ComplexMatrix& a);

/// Largest real part among the eigenvalues of a real square matrix.
/// Falls back to the Gershgorin bound max_i(a_ii + sum_{j!=i} |a_ij|)
/// if the eigenvalue iteration does not converge.
double spectral_abscissa_bound(const Matrix& a);

}  // namespace mphstar
