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

#include <cstdint>
#include <string>
#include <vector>

#include "mphstar/model.hpp"

namespace mphstar {

struct CheckResult {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass() const { return deviation <= tolerance; }
};

/// Tolerance overrides for the consistency battery; defaults come from
/// tolerances.hpp so the CLI and the acceptance suite agree by
/// construction.
struct CheckTolerances {
  double normalization;
  double lt_cross;
  double moment_relative;
  double marginal_exit;
  double mc_sigma;
  CheckTolerances();
};

/// The analytic consistency battery for one bivariate model:
/// transform-mass normalization, the two joint-LT routes on the fixed
/// (s1, s2) grid, the cross moment against its direct oracle, and the
/// marginal exit identity -T 1 = eta(0).
std::vector<CheckResult> consistency_checks(const MphStarModel& model,
                                            const CheckTolerances& tol = {});

/// Monte Carlo agreement checks: E[Z1], E[Z2], E[Z1 Z2] and P(Z1 = 0)
/// estimated from n paths must sit within mc_sigma standard errors of
/// their analytic values.
std::vector<CheckResult> mc_checks(const MphStarModel& model, std::uint64_t n, std::uint64_t seed,
                                   int workers = 1, const CheckTolerances& tol = {});

}  // namespace mphstar
