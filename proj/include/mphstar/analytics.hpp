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

#include <optional>

#include "mphstar/model.hpp"

namespace mphstar {

/// A univariate phase-type law PH(beta, T) of order n with an explicit
/// point mass at zero (the defect).
struct PhDistribution {
  RowVector beta;      ///< sub-probability initial row vector
  Matrix T;            ///< n x n stable sub-generator
  double defect = 0.0; ///< mass at 0

  Eigen::Index order() const { return T.rows(); }
};

/// Phase-type representation of the first coordinate:
/// beta = alpha_+ + alpha_0 (-Q00^{-1}) Q0+, T = W(0), and
/// defect = alpha_abs + alpha_0 (-Q00^{-1}) eta_0.  The exit identity
/// -T 1 = eta(0) holds entrywise.
PhDistribution marginal_Z1(const BlockDecomposition& bd);

/// Phase-type representation of the second coordinate, obtained by
/// swapping the reward rows and reducing the swapped pair.
PhDistribution marginal_Z2(const MphStarModel& model);

/// defect + beta (I - e^{T x}) 1 for x >= 0; returns the defect at x = 0.
double ph_cdf(const PhDistribution& ph, double x);

/// Factorial moments of the PH law: beta (-T)^{-1} 1 and 2 beta (-T)^{-2} 1.
double ph_mean(const PhDistribution& ph);
double ph_second_moment(const PhDistribution& ph);

/// Cross moment E[Z1 Z2] = -d/ds [alpha(s) W(s)^{-2} eta(s)] at s = 0,
/// with all factor derivatives taken analytically via the resolvent rule
/// d/ds M(s)^{-1} = -M(s)^{-1} M'(s) M(s)^{-1}.
double joint_moment(const BlockDecomposition& bd);

/// Independent route to the same cross moment directly from (alpha, Q, R):
/// alpha (-Q)^{-1} diag(r1) (-Q)^{-1} r2' + alpha (-Q)^{-1} diag(r2) (-Q)^{-1} r1'.
double joint_moment_oracle(const MphStarModel& model);

/// First-order summary of a bivariate model.  The correlation is absent
/// when either marginal variance is zero.
struct MomentSummary {
  double mean_z1 = 0.0;
  double mean_z2 = 0.0;
  double cross_moment = 0.0;
  double covariance = 0.0;
  std::optional<double> correlation;
};

MomentSummary covariance(const MphStarModel& model);

}  // namespace mphstar
