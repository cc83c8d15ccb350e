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
#include <iosfwd>
#include <vector>

#include "mphstar/model.hpp"
#include "mphstar/rng.hpp"

namespace mphstar {

/// One realization of the absorbing reward process: the visited transient
/// states with their sojourn times, the accumulated reward totals
/// Z_i = sum_j sojourn_j * r_i(state_j) (accumulated in visit order, so
/// the sum is reproducible bit-exactly), and the absorption time tau.
/// A path drawn directly into absorption has tau = 0 and Z = 0.
struct RewardPath {
  std::vector<std::int32_t> states;  ///< 0-based transient states, in visit order
  std::vector<double> sojourns;
  Vector totals;                     ///< Z, one entry per reward row
  double absorption_time = 0.0;      ///< tau
  /// Structural flags: coordinate i visited a state with r_i > 0.  The
  /// atom {Z_i = 0} is decided by this flag, never by comparing the
  /// accumulated float against zero.
  std::vector<bool> hit_positive_reward;
};

/// Draws one path: initial state from (alpha, alpha_abs), exponential
/// sojourns with rate -q_ii, jumps by the embedded chain including
/// absorption with rate eta_i.  Pure given the generator state; the model
/// must be valid.  When record_path is false, states/sojourns stay empty
/// but all draws and totals are identical.
RewardPath simulate_one(const MphStarModel& model, PhiloxRng& rng, bool record_path = true);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo summary for a bivariate model: moments, the structural
/// atom frequency, the empirical joint Laplace transform on a fixed
/// (s1, s2) grid and the empirical marginal CDFs at fixed points.  For a
/// given (model, seed, n) the report is bit-identical across runs and
/// across worker counts: sample i always uses Philox stream i, samples
/// are reduced in fixed-size blocks, and blocks merge in index order.
struct EstimateReport {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  Estimate mean_z1, mean_z2, cross_moment, prob_z1_zero;
  std::vector<std::pair<double, double>> lt_arguments;  ///< fixed (s1, s2) pairs
  std::vector<Estimate> joint_lt;                       ///< one per pair
  std::vector<double> cdf_points;                       ///< fixed evaluation grid
  std::vector<Estimate> cdf_z1, cdf_z2;                 ///< one per point
};

EstimateReport estimate(const MphStarModel& model, std::uint64_t n, std::uint64_t seed,
                        int workers = 1);

/// 17-significant-digit JSON rendering with fixed key order; the
/// byte-comparison target for reproducibility checks.
std::string report_to_json(const EstimateReport& report);

/// Writes `count` simulated paths as JSON lines with fields (states,
/// sojourns, Z); states are printed 1-based.  Path i is drawn from the
/// same stream as sample i of estimate(), so dumps and estimates agree.
void dump_paths(const MphStarModel& model, std::uint64_t count, std::uint64_t seed,
                std::ostream& out);

}  // namespace mphstar
