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
#include "mphstar/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <thread>

#include "mphstar/format.hpp"

namespace mphstar {

namespace {

// Samples per reduction block.  Blocks are an implementation constant,
// not a tuning knob: changing it changes merge order and hence the
// bit-exact report.
constexpr std::uint64_t kBlockSize = 16384;

const double kLtGridAxis[] = {0.0, 0.1, 1.0, 5.0};
const double kCdfPoints[] = {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0};

constexpr std::size_t kLtCount = 16;
constexpr std::size_t kCdfCount = 10;
// Accumulator layout: z1, z2, z1*z2, 1{Z1 = 0}, 16 LT values, CDF
// indicators for Z1 then Z2.
constexpr std::size_t kQuantities = 4 + kLtCount + 2 * kCdfCount;

struct BlockSums {
  std::array<double, kQuantities> sum{};
  std::array<double, kQuantities> sum_sq{};
};

std::vector<std::pair<double, double>> lt_pairs() {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(kLtCount);
  for (double s1 : kLtGridAxis) {
    for (double s2 : kLtGridAxis) {
      pairs.emplace_back(s1, s2);
    }
  }
  return pairs;
}

}  // namespace

RewardPath simulate_one(const MphStarModel& model, PhiloxRng& rng, bool record_path) {
  const Eigen::Index m = model.num_states();
  const Eigen::Index k = model.num_rewards();

  RewardPath path;
  path.totals = Vector::Zero(k);
  path.hit_positive_reward.assign(static_cast<std::size_t>(k), false);

  // Initial state; falling off the end of alpha is initial absorption.
  double u = rng.next_unit();
  Eigen::Index state = -1;
  double cum = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    cum += model.alpha(i);
    if (u < cum) {
      state = i;
      break;
    }
  }

  while (state >= 0) {
    const double rate = -model.Q(state, state);
    const double sojourn = rng.next_exponential(rate);
    path.absorption_time += sojourn;
    for (Eigen::Index i = 0; i < k; ++i) {
      const double reward = model.R(i, state);
      path.totals(i) += sojourn * reward;
      if (reward > 0.0) {
        path.hit_positive_reward[static_cast<std::size_t>(i)] = true;
      }
    }
    if (record_path) {
      path.states.push_back(static_cast<std::int32_t>(state));
      path.sojourns.push_back(sojourn);
    }

    // Embedded jump: off-diagonal targets in index order, absorption as
    // the remaining mass eta_state / rate.
    const double jump = rng.next_unit() * rate;
    Eigen::Index next = -1;
    double jump_cum = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j == state) continue;
      jump_cum += model.Q(state, j);
      if (jump < jump_cum) {
        next = j;
        break;
      }
    }
    state = next;
  }
  return path;
}

EstimateReport estimate(const MphStarModel& model, std::uint64_t n, std::uint64_t seed,
                        int workers) {
  if (model.num_rewards() != 2) {
    throw std::invalid_argument("estimate: model must be bivariate (k = 2)");
  }
  if (n < 1) {
    throw std::invalid_argument("estimate: sample count must be at least 1");
  }
  const ValidationReport validity = validate(model);
  if (!validity.ok()) {
    throw std::invalid_argument("estimate: invalid model:\n" + validity.to_string());
  }

  const auto pairs = lt_pairs();
  const std::uint64_t block_count = (n + kBlockSize - 1) / kBlockSize;
  std::vector<BlockSums> blocks(static_cast<std::size_t>(block_count));

  auto run_block = [&](std::uint64_t b) {
    BlockSums& acc = blocks[static_cast<std::size_t>(b)];
    const std::uint64_t begin = b * kBlockSize;
    const std::uint64_t end = std::min<std::uint64_t>(n, begin + kBlockSize);
    std::array<double, kQuantities> vals;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      PhiloxRng rng(seed, idx);
      const RewardPath path = simulate_one(model, rng, /*record_path=*/false);
      const double z1 = path.totals(0);
      const double z2 = path.totals(1);
      vals[0] = z1;
      vals[1] = z2;
      vals[2] = z1 * z2;
      vals[3] = path.hit_positive_reward[0] ? 0.0 : 1.0;
      for (std::size_t p = 0; p < kLtCount; ++p) {
        vals[4 + p] = std::exp(-pairs[p].first * z1 - pairs[p].second * z2);
      }
      for (std::size_t c = 0; c < kCdfCount; ++c) {
        vals[4 + kLtCount + c] = z1 <= kCdfPoints[c] ? 1.0 : 0.0;
        vals[4 + kLtCount + kCdfCount + c] = z2 <= kCdfPoints[c] ? 1.0 : 0.0;
      }
      for (std::size_t q = 0; q < kQuantities; ++q) {
        acc.sum[q] += vals[q];
        acc.sum_sq[q] += vals[q] * vals[q];
      }
    }
  };

  const int used = static_cast<int>(
      std::min<std::uint64_t>(block_count, static_cast<std::uint64_t>(std::max(1, workers))));
  if (used <= 1) {
    for (std::uint64_t b = 0; b < block_count; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(used));
    for (int w = 0; w < used; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = static_cast<std::uint64_t>(w); b < block_count;
             b += static_cast<std::uint64_t>(used)) {
          run_block(b);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Merge in block order; the reduction is independent of the worker count.
  std::array<double, kQuantities> sum{};
  std::array<double, kQuantities> sum_sq{};
  for (const BlockSums& b : blocks) {
    for (std::size_t q = 0; q < kQuantities; ++q) {
      sum[q] += b.sum[q];
      sum_sq[q] += b.sum_sq[q];
    }
  }

  const double count = static_cast<double>(n);
  auto finish = [&](std::size_t q) {
    Estimate e;
    e.value = sum[q] / count;
    if (n > 1) {
      const double variance = std::max(0.0, (sum_sq[q] - sum[q] * sum[q] / count) / (count - 1.0));
      e.std_error = std::sqrt(variance / count);
    }
    return e;
  };

  EstimateReport report;
  report.seed = seed;
  report.samples = n;
  report.mean_z1 = finish(0);
  report.mean_z2 = finish(1);
  report.cross_moment = finish(2);
  report.prob_z1_zero = finish(3);
  report.lt_arguments = pairs;
  report.joint_lt.resize(kLtCount);
  for (std::size_t p = 0; p < kLtCount; ++p) {
    report.joint_lt[p] = finish(4 + p);
  }
  report.cdf_points.assign(std::begin(kCdfPoints), std::end(kCdfPoints));
  report.cdf_z1.resize(kCdfCount);
  report.cdf_z2.resize(kCdfCount);
  for (std::size_t c = 0; c < kCdfCount; ++c) {
    report.cdf_z1[c] = finish(4 + kLtCount + c);
    report.cdf_z2[c] = finish(4 + kLtCount + kCdfCount + c);
  }
  return report;
}

std::string report_to_json(const EstimateReport& report) {
  JsonWriter w(17);
  auto estimate_object = [&w](const Estimate& e) {
    w.begin_object();
    w.key("value").value(e.value);
    w.key("std_error").value(e.std_error);
    w.end_object();
  };

  w.begin_object();
  w.key("seed").value(report.seed);
  w.key("samples").value(report.samples);
  w.key("mean_z1");
  estimate_object(report.mean_z1);
  w.key("mean_z2");
  estimate_object(report.mean_z2);
  w.key("cross_moment");
  estimate_object(report.cross_moment);
  w.key("prob_z1_zero");
  estimate_object(report.prob_z1_zero);
  w.key("joint_lt").begin_array();
  for (std::size_t p = 0; p < report.joint_lt.size(); ++p) {
    w.begin_object();
    w.key("s1").value(report.lt_arguments[p].first);
    w.key("s2").value(report.lt_arguments[p].second);
    w.key("value").value(report.joint_lt[p].value);
    w.key("std_error").value(report.joint_lt[p].std_error);
    w.end_object();
  }
  w.end_array();
  w.key("cdf_points").begin_array();
  for (double x : report.cdf_points) w.value(x);
  w.end_array();
  w.key("cdf_z1").begin_array();
  for (const Estimate& e : report.cdf_z1) estimate_object(e);
  w.end_array();
  w.key("cdf_z2").begin_array();
  for (const Estimate& e : report.cdf_z2) estimate_object(e);
  w.end_array();
  w.end_object();
  return w.str();
}

void dump_paths(const MphStarModel& model, std::uint64_t count, std::uint64_t seed,
                std::ostream& out) {
  const ValidationReport validity = validate(model);
  if (!validity.ok()) {
    throw std::invalid_argument("dump_paths: invalid model:\n" + validity.to_string());
  }
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    PhiloxRng rng(seed, idx);
    const RewardPath path = simulate_one(model, rng, /*record_path=*/true);
    JsonWriter w(17);
    w.begin_object();
    w.key("states").begin_array();
    for (std::int32_t s : path.states) w.value(s + 1);
    w.end_array();
    w.key("sojourns").begin_array();
    for (double s : path.sojourns) w.value(s);
    w.end_array();
    w.key("Z").begin_array();
    for (Eigen::Index i = 0; i < path.totals.size(); ++i) w.value(path.totals(i));
    w.end_array();
    w.end_object();
    out << w.str() << '\n';
  }
}

}  // namespace mphstar
