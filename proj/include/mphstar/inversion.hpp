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

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mphstar/transform.hpp"

namespace mphstar {

/// Parameters of the Euler-summation Laplace inverter (Abate & Whitt,
/// "Numerical inversion of Laplace transforms of probability
/// distributions", ORSA J. Computing 7, 1995).  The discretization error
/// of the underlying trapezoid contour is about e^{-contour_shift}, i.e.
/// ~1e-8 at the default 18.4 for densities bounded by 1.
struct InversionParams {
  double contour_shift = 18.4;  ///< A: Bromwich shift times 2x
  int truncation_terms = 15;    ///< N: plain terms before acceleration
  int euler_terms = 11;         ///< M: binomial averaging terms
};

/// Throws invalid_argument unless contour_shift > 0 and both term counts
/// are >= 1.
void validate_params(const InversionParams& params);

/// One Euler-accelerated inversion of `transform` at argument x > 0.
/// Evaluates the transform on the contour nodes s_k = (A + 2 k pi i)/(2x),
/// folds each node with its conjugate, and binomially averages the
/// partial sums N..N+M.  imag_residue is the leftover imaginary part of
/// the folded sum; it vanishes when the transform is real on the real
/// axis, which conjugate symmetry guarantees.
struct EulerInversion {
  double value = 0.0;
  double imag_residue = 0.0;
};
EulerInversion euler_invert(const std::function<Complex(Complex)>& transform, double x,
                            const InversionParams& params);

/// Bivariate density f(y, x) obtained by inverting
/// s -> E[e^{-s Z2} 1{Z1 in dy}] at x.  Raw inversion output; negative
/// noise is only clamped during grid assembly.
double invert_density(const BlockDecomposition& bd, double y, double x,
                      const InversionParams& params = {});

/// Density (w.r.t. dx) of Z2 restricted to the atom {Z1 = 0}; integrates
/// to P(Z1 = 0).  Exactly 0 when E0 is empty.
double invert_atom_density(const BlockDecomposition& bd, double x,
                           const InversionParams& params = {});

/// True when the two reward rows are proportional (r2 = c r1 for one
/// constant c > 0), in which case Z2 = c Z1 pathwise and the pair has no
/// bivariate density.  Cross determinants are evaluated exactly with
/// fma and compared against a few-ulp relative bound, so both bitwise
/// proportional rows and rows built as c * r1 in double arithmetic are
/// caught.  The ratio c is written to `ratio` if given.
bool proportional_rewards(const BlockDecomposition& bd, double* ratio = nullptr);

/// A negative inverted value too large to pass as inversion noise.
struct AccuracyFailure {
  double y = 0.0;  ///< 0 marks the atom row
  double x = 0.0;
  double value = 0.0;
};

/// Tabulated bivariate density with the atom row and inversion metadata.
struct DensityGrid {
  Vector ys;
  Vector xs;
  Matrix values;               ///< f(y, x), row i = ys(i), column j = xs(j)
  Vector atom;                 ///< atom density at each x
  std::string model_hash;      ///< FNV-1a over the decomposition bytes
  InversionParams params;
  int clamped_count = 0;       ///< small negatives set to 0
  std::vector<AccuracyFailure> accuracy_failures;
  bool singular_warning = false;  ///< proportional rewards detected
};

/// Inverts the density on the full ys x xs grid.  For each x the contour
/// nodes are shared across all y through density_transform_grid; columns
/// are independent and distributed over `threads`, and the fixed
/// summation order inside each cell makes the result bit-identical for
/// any thread count.  Negative values with magnitude at most 1e-7 of the
/// grid maximum are clamped to 0 and counted; larger negatives are kept
/// and recorded as accuracy failures.
DensityGrid density_grid(const BlockDecomposition& bd, const Vector& ys, const Vector& xs,
                         const InversionParams& params = {}, int threads = 1);

/// CSV export: header "y,x,f", the atom rows first with y = 0 as the
/// sentinel, then the cells in row-major (y outer, x inner) order, all
/// numbers with 17 significant digits.
void write_csv(const DensityGrid& grid, std::ostream& out);

/// JSON export mirroring the DensityGrid fields.
std::string to_json(const DensityGrid& grid);

}  // namespace mphstar
