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

// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mphstar/analytics.hpp"
#include "mphstar/inversion.hpp"
#include "mphstar/simulate.hpp"
#include "mphstar/tolerances.hpp"
#include "mphstar/transform.hpp"
#include "support/random_models.hpp"
#include "support/test_models.hpp"

using namespace mphstar;

namespace {

constexpr int kModelCount = 200;

struct Criterion {
  int number;
  std::string label;
  bool pass;
  std::string detail;
  double seconds;
  double budget_seconds;
};

std::vector<Criterion> g_results;

void record(int number, const std::string& label, bool pass, const std::string& detail,
            double seconds, double budget) {
  const bool in_budget = seconds < budget;
  g_results.push_back({number, label, pass && in_budget, detail, seconds, budget});
  std::printf("[%s] criterion %d: %s (%s; %.2f s of %.0f s budget)\n",
              (pass && in_budget) ? "PASS" : "FAIL", number, label.c_str(), detail.c_str(),
              seconds, budget);
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt_dev(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

void criterion_normalization() {
  Timer timer;
  double worst = 0.0;
  for (int i = 0; i < kModelCount; ++i) {
    const BlockDecomposition bd = block_decompose(testing::random_valid_model(i));
    const TransformTriple t = triple_at(bd, Complex(0.0));
    const ComplexMatrix tail = solve(ComplexMatrix(-t.w_s), ComplexMatrix(t.eta_s));
    const Complex mass =
        bd.alpha_abs + atom_transform(bd, Complex(0.0)) + (t.alpha_s * tail.col(0)).value();
    worst = std::max(worst, std::abs(mass - 1.0));
  }
  record(1, "transform mass normalization over 200 random models",
         worst <= tolerances::kNormalization,
         "max deviation " + fmt_dev(worst) + ", limit " + fmt_dev(tolerances::kNormalization),
         timer.seconds(), 5.0);
}

void criterion_lt_cross_check() {
  Timer timer;
  double worst = 0.0;
  for (int i = 0; i < kModelCount; ++i) {
    const MphStarModel model = testing::random_valid_model(i);
    const BlockDecomposition bd = block_decompose(model);
    for (double s1 : tolerances::kLtGridAxis) {
      for (double s2 : tolerances::kLtGridAxis) {
        const double dev =
            std::abs(joint_lt_from_density(bd, s1, s2) - joint_lt_kulkarni(model, s1, s2));
        worst = std::max(worst, dev);
      }
    }
  }
  record(2, "joint Laplace transform, assembled route vs direct route",
         worst <= tolerances::kLtCrossCheck,
         "max deviation " + fmt_dev(worst) + " on the 16-point grid, limit " +
             fmt_dev(tolerances::kLtCrossCheck),
         timer.seconds(), 10.0);
}

void criterion_moments() {
  Timer timer;
  double worst_rel = 0.0;
  for (int i = 0; i < kModelCount; ++i) {
    const MphStarModel model = testing::random_valid_model(i);
    const double formula = joint_moment(block_decompose(model));
    const double oracle = joint_moment_oracle(model);
    const double scale = std::max({std::abs(formula), std::abs(oracle), 1e-300});
    worst_rel = std::max(worst_rel, std::abs(formula - oracle) / scale);
  }

  const MphStarModel exact_models[3] = {testing::model_a(), testing::model_b(),
                                        testing::model_c()};
  const double exact_values[3] = {4.0 / 9.0, 0.5, 0.25};
  double worst_exact = 0.0;
  for (int i = 0; i < 3; ++i) {
    worst_exact = std::max(
        worst_exact, std::abs(joint_moment(block_decompose(exact_models[i])) - exact_values[i]));
    worst_exact =
        std::max(worst_exact, std::abs(joint_moment_oracle(exact_models[i]) - exact_values[i]));
  }

  const bool pass = worst_rel <= tolerances::kMomentRelative && worst_exact <= 1e-12;
  record(3, "cross moment, derivative formula vs direct oracle", pass,
         "max relative deviation " + fmt_dev(worst_rel) + " (limit " +
             fmt_dev(tolerances::kMomentRelative) + "), closed-form targets off by " +
             fmt_dev(worst_exact) + " (limit 1e-12)",
         timer.seconds(), 5.0);
}

void criterion_marginal() {
  Timer timer;
  double worst = 0.0;
  for (int i = 0; i < kModelCount; ++i) {
    const BlockDecomposition bd = block_decompose(testing::random_valid_model(i));
    const PhDistribution ph = marginal_Z1(bd);
    const TransformTriple t = triple_at(bd, Complex(0.0));
    const Vector exit_rates = -(ph.T * Vector::Ones(ph.order()));
    const Vector eta0 = t.eta_s.real();
    worst = std::max(worst, (exit_rates - eta0).cwiseAbs().maxCoeff());
  }

  const PhDistribution ph_b = marginal_Z1(block_decompose(testing::model_b()));
  const double exact_b = std::max({std::abs(ph_b.beta(0) - 1.0), std::abs(ph_b.T(0, 0) + 2.0),
                                   std::abs(ph_b.defect)});

  const bool pass = worst <= tolerances::kMarginalExitIdentity && exact_b <= 1e-14;
  record(4, "marginal exit identity -T 1 = eta(0) and the exact Exp(2) marginal", pass,
         "max identity deviation " + fmt_dev(worst) + " (limit " +
             fmt_dev(tolerances::kMarginalExitIdentity) + "), Exp(2) representation off by " +
             fmt_dev(exact_b) + " (limit 1e-14)",
         timer.seconds(), 5.0);
}

void criterion_inversion() {
  Timer timer;
  const BlockDecomposition bd_b = block_decompose(testing::model_b());
  Vector grid(30);
  for (int i = 0; i < 30; ++i) {
    grid(i) = 0.1 + (3.0 - 0.1) * i / 29.0;
  }
  const DensityGrid density = density_grid(bd_b, grid, grid, {}, 2);
  double worst_rel = 0.0;
  for (int iy = 0; iy < 30; ++iy) {
    for (int ix = 0; ix < 30; ++ix) {
      const double expected = 2.0 * std::exp(-2.0 * grid(iy) - grid(ix));
      worst_rel = std::max(worst_rel, std::abs(density.values(iy, ix) - expected) / expected);
    }
  }

  const BlockDecomposition bd_c = block_decompose(testing::model_c());
  double worst_atom = 0.0;
  for (int i = 0; i < 30; ++i) {
    const double x = grid(i);
    const double expected = std::exp(-2.0 * x);
    worst_atom = std::max(worst_atom,
                          std::abs(invert_atom_density(bd_c, x) - expected) / expected);
  }

  const bool pass = worst_rel <= 1e-6 && worst_atom <= 1e-6;
  record(5, "Euler inversion vs closed-form density and atom density", pass,
         "density max relative error " + fmt_dev(worst_rel) + ", atom max relative error " +
             fmt_dev(worst_atom) + ", limit 1e-6",
         timer.seconds(), 30.0);
}

void criterion_monte_carlo() {
  Timer timer;
  const std::uint64_t n = 1000000;
  const std::uint64_t seed = 20260808;
  bool pass = true;
  std::string detail;

  const MphStarModel models[3] = {testing::model_a(), testing::model_b(), testing::model_c()};
  const char* names[3] = {"A", "B", "C"};
  for (int i = 0; i < 3; ++i) {
    const MphStarModel& model = models[i];
    const BlockDecomposition bd = block_decompose(model);
    const MomentSummary analytic = covariance(model);
    const double atom_mass = model.alpha_abs + atom_transform(bd, Complex(0.0)).real();
    const EstimateReport report = estimate(model, n, seed, 2);

    const struct {
      const char* what;
      Estimate estimate;
      double target;
    } rows[] = {
        {"EZ1", report.mean_z1, analytic.mean_z1},
        {"EZ2", report.mean_z2, analytic.mean_z2},
        {"EZ1Z2", report.cross_moment, analytic.cross_moment},
        {"P(Z1=0)", report.prob_z1_zero, atom_mass},
    };
    for (const auto& row : rows) {
      const double dev = std::abs(row.estimate.value - row.target);
      const double window = tolerances::kMcSigma * row.estimate.std_error;
      if (dev > window) {
        pass = false;
        detail += std::string(" ") + names[i] + ":" + row.what + " off by " + fmt_dev(dev) +
                  " > " + fmt_dev(window) + ";";
      }
    }
  }

  // pathwise comonotonicity of the proportional-rewards model
  bool pathwise = true;
  for (std::uint64_t i = 0; i < 5000 && pathwise; ++i) {
    PhiloxRng rng(seed, i);
    const RewardPath path = simulate_one(models[0], rng, false);
    pathwise = path.totals(1) == 2.0 * path.totals(0);
  }
  if (!pathwise) {
    pass = false;
    detail += " Z2 = 2 Z1 violated pathwise;";
  }
  if (detail.empty()) {
    detail = "all estimates within " + fmt_dev(tolerances::kMcSigma) +
             " standard errors; Z2 = 2 Z1 pathwise";
  }
  record(6, "Monte Carlo estimates vs analytic values (N = 10^6, pinned seed)", pass, detail,
         timer.seconds(), 60.0);
}

void criterion_reproducibility() {
  Timer timer;
  const MphStarModel model = testing::model_c();
  const std::uint64_t n = 200000;
  const std::string w1 = report_to_json(estimate(model, n, 42, 1));
  const std::string w4 = report_to_json(estimate(model, n, 42, 4));
  const std::string w8 = report_to_json(estimate(model, n, 42, 8));
  const std::string rerun = report_to_json(estimate(model, n, 42, 4));
  const bool pass = w1 == w4 && w1 == w8 && w4 == rerun;
  record(7, "seeded simulation reports byte-identical across 1/4/8 workers and reruns", pass,
         pass ? "4 reports identical" : "reports differ", timer.seconds(), 60.0);
}

}  // namespace

int main() {
  criterion_normalization();
  criterion_lt_cross_check();
  criterion_moments();
  criterion_marginal();
  criterion_inversion();
  criterion_monte_carlo();
  criterion_reproducibility();

  int failures = 0;
  for (const Criterion& c : g_results) {
    if (!c.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(g_results.size()) - failures,
              g_results.size());
  return failures == 0 ? 0 : 1;
}
