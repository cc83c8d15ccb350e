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
#include "mphstar/check.hpp"

#include <cmath>

#include "mphstar/analytics.hpp"
#include "mphstar/simulate.hpp"
#include "mphstar/tolerances.hpp"
#include "mphstar/transform.hpp"

namespace mphstar {

CheckTolerances::CheckTolerances()
    : normalization(tolerances::kNormalization),
      lt_cross(tolerances::kLtCrossCheck),
      moment_relative(tolerances::kMomentRelative),
      marginal_exit(tolerances::kMarginalExitIdentity),
      mc_sigma(tolerances::kMcSigma) {}

std::vector<CheckResult> consistency_checks(const MphStarModel& model,
                                            const CheckTolerances& tol) {
  const BlockDecomposition bd = block_decompose(model);
  std::vector<CheckResult> results;

  {
    const TransformTriple t = triple_at(bd, Complex(0.0));
    const ComplexMatrix body = solve(ComplexMatrix(-t.w_s), ComplexMatrix(t.eta_s));
    const Complex mass =
        bd.alpha_abs + atom_transform(bd, Complex(0.0)) + (t.alpha_s * body.col(0)).value();
    results.push_back({"normalization", std::abs(mass - 1.0), tol.normalization});
  }

  {
    double worst = 0.0;
    for (double s1 : tolerances::kLtGridAxis) {
      for (double s2 : tolerances::kLtGridAxis) {
        const Complex a = joint_lt_from_density(bd, s1, s2);
        const Complex b = joint_lt_kulkarni(model, s1, s2);
        worst = std::max(worst, std::abs(a - b));
      }
    }
    results.push_back({"lt_cross_check", worst, tol.lt_cross});
  }

  {
    const double formula = joint_moment(bd);
    const double oracle = joint_moment_oracle(model);
    const double scale = std::max({std::abs(formula), std::abs(oracle), 1e-300});
    results.push_back({"moment_vs_oracle", std::abs(formula - oracle) / scale,
                       tol.moment_relative});
  }

  {
    const PhDistribution ph = marginal_Z1(bd);
    const TransformTriple t = triple_at(bd, Complex(0.0));
    const Vector exit_rates = -(ph.T * Vector::Ones(ph.order()));
    const double worst = (exit_rates - t.eta_s.real()).cwiseAbs().maxCoeff();
    results.push_back({"marginal_exit_identity", worst, tol.marginal_exit});
  }

  return results;
}

std::vector<CheckResult> mc_checks(const MphStarModel& model, std::uint64_t n, std::uint64_t seed,
                                   int workers, const CheckTolerances& tol) {
  const BlockDecomposition bd = block_decompose(model);
  const MomentSummary moments = covariance(model);
  const double atom_mass =
      model.alpha_abs + atom_transform(bd, Complex(0.0)).real();
  const EstimateReport report = estimate(model, n, seed, workers);

  auto window = [&](const char* name, const Estimate& est, double analytic) {
    return CheckResult{name, std::abs(est.value - analytic), tol.mc_sigma * est.std_error};
  };

  return {
      window("mc_mean_z1", report.mean_z1, moments.mean_z1),
      window("mc_mean_z2", report.mean_z2, moments.mean_z2),
      window("mc_cross_moment", report.cross_moment, moments.cross_moment),
      window("mc_prob_z1_zero", report.prob_z1_zero, atom_mass),
  };
}

}  // namespace mphstar
