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

#include "mphstar/model.hpp"

namespace mphstar {

/// The three building blocks of the transform density
/// E[e^{-s Z2} 1{Z1 in dy}] = alpha(s) e^{W(s) y} eta(s) dy, reduced to
/// the positive-reward states:
///
///   alpha(s) = alpha_0 (s D0 - Q00)^{-1} Q0+ + alpha_+
///   W(s)     = R+^{-1} ((Q++ - s D+) - Q+0 (Q00 - s D0)^{-1} Q0+)
///   eta(s)   = R+^{-1} (Q+0 (s D0 - Q00)^{-1} eta_0 + eta_+)
///
/// where D0, D+ carry the second-coordinate rewards and R+ the (positive)
/// first-coordinate rewards.  At s = 0, W(0) is a stable sub-generator
/// and alpha(0), eta(0) are real and nonnegative.
struct TransformTriple {
  Complex s;
  ComplexRowVector alpha_s;  ///< row vector over E+
  ComplexMatrix w_s;         ///< n x n, n = |E+|
  ComplexVector eta_s;       ///< column vector over E+
};

/// Evaluates the triple at a complex argument with Re(s) >= 0.  When E0 is
/// empty this degenerates to alpha(s) = alpha_+, W(s) = R+^{-1}(Q++ - s D+),
/// eta(s) = R+^{-1} eta_+.
TransformTriple triple_at(const BlockDecomposition& bd, Complex s);

/// Transform of Z2 restricted to the atom {Z1 = 0}:
/// alpha_0 (s D0 - Q00)^{-1} eta_0.  Exactly 0 when E0 is empty.  Does not
/// include the initial-absorption mass alpha_abs.
Complex atom_transform(const BlockDecomposition& bd, Complex s);

/// alpha(s) e^{W(s) y} eta(s) for y > 0: a density in y, a Laplace
/// transform in the second coordinate.
Complex density_transform(const TransformTriple& triple, double y);
Complex density_transform(const BlockDecomposition& bd, Complex s, double y);

/// density_transform on an ascending equispaced y-grid, sharing one
/// matrix exponential of W(s) * step across all points.
ComplexVector density_transform_grid(const BlockDecomposition& bd, Complex s, const Vector& ys);

/// Joint Laplace transform E[e^{-s1 Z1 - s2 Z2}] assembled from the
/// transform density: alpha_abs + atom(s2) + alpha(s2) (s1 I - W(s2))^{-1} eta(s2).
Complex joint_lt_from_density(const BlockDecomposition& bd, Complex s1, Complex s2);

/// The same joint Laplace transform by Kulkarni's direct formula
/// alpha_abs - alpha (Delta - Q)^{-1} Q 1 with
/// Delta = diag(s1 r_1(j) + s2 r_2(j)).  Kept as an independent route;
/// agreement with joint_lt_from_density is the library's main cross-check.
Complex joint_lt_kulkarni(const MphStarModel& model, Complex s1, Complex s2);

}  // namespace mphstar
