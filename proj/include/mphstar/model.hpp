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

#include <string>
#include <vector>

#include "mphstar/linalg.hpp"

namespace mphstar {

/// An MPH*(alpha, Q, R) model: an absorbing Markov jump process on m
/// transient states with sub-generator Q, initial law (alpha, alpha_abs),
/// and k reward rate rows.  Coordinate i of the distributed vector is the
/// reward accumulated along row i of R until absorption (Kulkarni's
/// multivariate phase-type class, Kulkarni 1989).
///
/// Immutable by convention: all operations take models by const reference
/// and return new values, so instances are safe to share across threads.
struct MphStarModel {
  RowVector alpha;        ///< initial probabilities of the transient states
  double alpha_abs = 0.0; ///< initial mass on the absorbing state
  Matrix Q;               ///< m x m sub-generator
  Matrix R;               ///< k x m reward rates, row i = coordinate i

  Eigen::Index num_states() const { return Q.rows(); }
  Eigen::Index num_rewards() const { return R.rows(); }
};

struct Violation {
  std::string invariant;  ///< short name of the violated invariant
  std::string detail;     ///< offending indices / values
};

/// Result of validate().  ok() holds exactly when no violation was found.
struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Checks every model invariant and reports all violations, not just the
/// first: nonnegative alpha summing (with alpha_abs) to 1, sub-generator
/// sign pattern, transience of every state (Q x = -1 solvable with x > 0),
/// nonnegative rewards with at least one positive entry per row.
///
/// Dimension mismatches are structural errors and throw invalid_argument
/// instead of being reported.
ValidationReport validate(const MphStarModel& model);

/// Restriction of a k-variate model to the reward pair (i, j), 1-based.
/// Same alpha, alpha_abs and Q; R becomes rows (i, j) of the original.
MphStarModel pair_projection(const MphStarModel& model, int i, int j);

/// State-space partition of a bivariate model by the sign of the first
/// reward row: E0 = {i : r_1i = 0} (classified by exact equality), E+ its
/// complement, with Q, alpha and the exit vector eta = -Q 1 sliced
/// accordingly.  Either part may be empty; empty E+ is rejected by
/// validation already.
struct BlockDecomposition {
  std::vector<Eigen::Index> perm;  ///< reordered position -> original state
  Eigen::Index n_zero = 0;         ///< |E0|
  Eigen::Index n_plus = 0;         ///< |E+|

  Matrix q00, q0p, qp0, qpp;       ///< sub-generator blocks
  RowVector alpha0, alpha_plus;    ///< initial-law slices
  Vector eta0, eta_plus;           ///< exit-rate slices of eta = -Q 1

  Vector r1_plus;  ///< first-coordinate rewards on E+ (all > 0)
  Vector r2_plus;  ///< second-coordinate rewards on E+
  Vector r2_zero;  ///< second-coordinate rewards on E0

  double alpha_abs = 0.0;
};

/// Partitions a valid bivariate model.  Throws invalid_argument when the
/// model fails validation or has k != 2.
BlockDecomposition block_decompose(const MphStarModel& model);

/// Assembles the classical MPH special case (Assaf et al. 1984) from its
/// generator blocks.  States are ordered [both-rewards, first-only,
/// second-only]; the first reward rate is 1 off the second-only block and
/// the second reward rate is 1 off the first-only block, giving
///
///   Q = [ a12  b1  b2 ]        r1 = (1, 1, 0)
///       [  0   a1   0 ]        r2 = (1, 0, 1)
///       [  0    0  a2 ]
///
/// blockwise.  The initial law covers the three blocks in that order.
MphStarModel build_from_mph(const Matrix& a12, const Matrix& b1, const Matrix& b2,
                            const Matrix& a1, const Matrix& a2, const RowVector& alpha,
                            double alpha_abs = 0.0);

}  // namespace mphstar
