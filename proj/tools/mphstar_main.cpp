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
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mphstar/analytics.hpp"
#include "mphstar/check.hpp"
#include "mphstar/format.hpp"
#include "mphstar/inversion.hpp"
#include "mphstar/model_io.hpp"
#include "mphstar/simulate.hpp"
#include "mphstar/transform.hpp"

namespace {

using namespace mphstar;

constexpr int kExitOk = 0;
constexpr int kExitInvalidModel = 1;
constexpr int kExitIoOrParse = 2;
constexpr int kExitCheckFailed = 3;

constexpr int kTableDigits = 12;

std::string fmt(double v) { return format_significant(v, kTableDigits); }

/// Malformed or out-of-domain command-line arguments; maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid syntax a:b:n — n equispaced points from a to b inclusive.
Vector parse_grid(const std::string& text) {
  double a = 0.0, b = 0.0;
  long n = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &a, &b, &n, &extra) != 3 || n < 1) {
    throw UsageError("grid must have the form a:b:n with n >= 1: " + text);
  }
  if (n == 1) {
    if (a != b) {
      throw UsageError("single-point grid needs a == b: " + text);
    }
    Vector g(1);
    g(0) = a;
    return g;
  }
  if (!(b > a)) {
    throw UsageError("grid must be ascending: " + text);
  }
  Vector g(n);
  const double step = (b - a) / static_cast<double>(n - 1);
  for (long i = 0; i < n; ++i) {
    g(i) = a + step * static_cast<double>(i);
  }
  g(n - 1) = b;
  return g;
}

Vector parse_positive_grid(const std::string& text, const char* what) {
  Vector g = parse_grid(text);
  if (!(g(0) > 0.0)) {
    throw UsageError(std::string(what) + " grid must be positive: " + text);
  }
  return g;
}

std::pair<int, int> parse_pair(const std::string& text) {
  int i = 0, j = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%d,%d%c", &i, &j, &extra) != 2) {
    throw UsageError("pair must have the form i,j: " + text);
  }
  return {i, j};
}

Complex parse_complex(const std::string& text) {
  double re = 0.0, im = 0.0;
  char extra = 0;
  const int got2 = std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &extra);
  if (got2 == 2) return {re, im};
  if (std::sscanf(text.c_str(), "%lf%c", &re, &extra) == 1) return {re, 0.0};
  throw UsageError("complex argument must have the form re or re,im: " + text);
}

/// Loads, validates and (for k > 2) projects the model onto a pair.
MphStarModel load_bivariate(const std::string& path, const std::string& pair_text) {
  MphStarModel model = load_model(path);
  const ValidationReport report = validate(model);
  if (!report.ok()) {
    throw std::invalid_argument("invalid model:\n" + report.to_string());
  }
  const auto [i, j] = parse_pair(pair_text);
  if (model.num_rewards() == 2 && i == 1 && j == 2) {
    return model;
  }
  return pair_projection(model, i, j);
}

struct CommonArgs {
  std::string model_path;
  std::string pair = "1,2";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("model", args.model_path, "model JSON file")->required();
  cmd->add_option("--pair", args.pair,
                  "reward rows to analyze as (Z1, Z2), 1-based (default 1,2)");
}

int run_validate(const std::string& path) {
  const MphStarModel model = load_model(path);
  const ValidationReport report = validate(model);
  if (report.ok()) {
    std::cout << "ok: " << model.num_states() << " states, " << model.num_rewards()
              << " reward rows\n";
    return kExitOk;
  }
  std::cout << report.to_string();
  return kExitInvalidModel;
}

int run_transform(const CommonArgs& common, const std::string& s_text,
                  const std::string& y_text) {
  const MphStarModel model = load_bivariate(common.model_path, common.pair);
  const BlockDecomposition bd = block_decompose(model);
  const Complex s = parse_complex(s_text);
  if (!(s.real() >= 0.0)) {
    throw UsageError("--s must have a nonnegative real part");
  }
  const Vector ys = parse_positive_grid(y_text, "y");

  const Complex atom = atom_transform(bd, s);
  const ComplexVector values = density_transform_grid(bd, s, ys);

  std::cout << "s = " << fmt(s.real()) << (s.imag() >= 0 ? "+" : "") << fmt(s.imag()) << "i\n";
  std::cout << "atom transform E[e^{-s Z2}; Z1 = 0] = " << fmt(atom.real());
  if (s.imag() != 0.0) std::cout << (atom.imag() >= 0 ? " + " : " - ") << fmt(std::abs(atom.imag())) << "i";
  std::cout << "\n";
  std::cout << "y  Re<f~(y)>  Im<f~(y)>\n";
  for (Eigen::Index i = 0; i < ys.size(); ++i) {
    std::cout << fmt(ys(i)) << "  " << fmt(values(i).real()) << "  " << fmt(values(i).imag())
              << "\n";
  }
  return kExitOk;
}

int run_density(const CommonArgs& common, const std::string& ys_text, const std::string& xs_text,
                const InversionParams& params, int threads, const std::string& fmt_name,
                const std::string& out_path) {
  const MphStarModel model = load_bivariate(common.model_path, common.pair);
  const BlockDecomposition bd = block_decompose(model);
  const Vector ys = parse_positive_grid(ys_text, "y");
  const Vector xs = parse_positive_grid(xs_text, "x");
  if (xs(0) < 0.01) {
    std::cerr << "warning: inversion accuracy degrades for x below 0.01 "
                 "(contour scales like 1/x)\n";
  }

  const DensityGrid grid = density_grid(bd, ys, xs, params, threads);
  if (grid.singular_warning) {
    double ratio = 0.0;
    proportional_rewards(bd, &ratio);
    std::cerr << "warning: reward rows are exactly proportional (Z2 = " << fmt(ratio)
              << " * Z1); the pair is singular and has no bivariate density -- "
                 "grid values are inversion artifacts\n";
  }
  if (!grid.accuracy_failures.empty()) {
    std::cerr << "warning: " << grid.accuracy_failures.size()
              << " grid cells have negative values beyond inversion noise\n";
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      throw ModelParseError("cannot open output file: " + out_path);
    }
    out = &file;
  }
  if (fmt_name == "json") {
    *out << to_json(grid) << "\n";
  } else {
    write_csv(grid, *out);
  }
  return kExitOk;
}

int run_marginal(const CommonArgs& common, int which, const std::string& grid_text) {
  const MphStarModel model = load_bivariate(common.model_path, common.pair);
  if (which != 1 && which != 2) {
    throw UsageError("--which must be 1 or 2");
  }
  const PhDistribution ph =
      which == 1 ? marginal_Z1(block_decompose(model)) : marginal_Z2(model);

  std::cout << "order = " << ph.order() << "\n";
  std::cout << "beta =";
  for (Eigen::Index i = 0; i < ph.beta.size(); ++i) std::cout << " " << fmt(ph.beta(i));
  std::cout << "\nT =\n";
  for (Eigen::Index i = 0; i < ph.T.rows(); ++i) {
    std::cout << " ";
    for (Eigen::Index j = 0; j < ph.T.cols(); ++j) std::cout << " " << fmt(ph.T(i, j));
    std::cout << "\n";
  }
  std::cout << "defect = " << fmt(ph.defect) << "\n";
  std::cout << "x  F(x)\n";
  const Vector grid = parse_grid(grid_text);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    std::cout << fmt(grid(i)) << "  " << fmt(ph_cdf(ph, grid(i))) << "\n";
  }
  return kExitOk;
}

int run_moments(const CommonArgs& common) {
  const MphStarModel model = load_bivariate(common.model_path, common.pair);
  const MomentSummary s = covariance(model);
  const double oracle = joint_moment_oracle(model);
  std::cout << "EZ1           = " << fmt(s.mean_z1) << "\n";
  std::cout << "EZ2           = " << fmt(s.mean_z2) << "\n";
  std::cout << "EZ1Z2 formula = " << fmt(s.cross_moment) << "\n";
  std::cout << "EZ1Z2 oracle  = " << fmt(oracle) << "\n";
  std::cout << "cov           = " << fmt(s.covariance) << "\n";
  if (s.correlation) {
    std::cout << "corr          = " << fmt(*s.correlation) << "\n";
  } else {
    std::cout << "corr          = undefined (a marginal variance is 0)\n";
  }
  return kExitOk;
}

int run_simulate(const CommonArgs& common, std::uint64_t n, std::uint64_t seed, int workers,
                 const std::string& dump_file, std::uint64_t dump_count) {
  const MphStarModel model = load_bivariate(common.model_path, common.pair);
  if (!dump_file.empty()) {
    std::ofstream out(dump_file, std::ios::binary);
    if (!out) {
      throw ModelParseError("cannot open path dump file: " + dump_file);
    }
    dump_paths(model, dump_count, seed, out);
  }
  const EstimateReport report = estimate(model, n, seed, workers);
  std::cout << report_to_json(report) << "\n";
  return kExitOk;
}

int run_check(const CommonArgs& common, const CheckTolerances& tol, std::uint64_t mc_n,
              std::uint64_t seed, int workers) {
  const MphStarModel model = load_bivariate(common.model_path, common.pair);
  std::vector<CheckResult> results = consistency_checks(model, tol);
  if (mc_n > 0) {
    const std::vector<CheckResult> mc = mc_checks(model, mc_n, seed, workers, tol);
    results.insert(results.end(), mc.begin(), mc.end());
  }
  bool all_pass = true;
  for (const CheckResult& r : results) {
    all_pass = all_pass && r.pass();
    std::cout << (r.pass() ? "PASS" : "FAIL") << "  " << r.name << "  deviation "
              << format_significant(r.deviation, 3) << "  tolerance "
              << format_significant(r.tolerance, 3) << "\n";
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bivariate phase-type (MPH*) distributions: transforms, densities, moments, "
               "marginals and a Monte Carlo oracle"};
  app.require_subcommand(1);

  CommonArgs validate_args, transform_args, density_args, marginal_args, moments_args,
      simulate_args, check_args;

  CLI::App* cmd_validate = app.add_subcommand("validate", "check model invariants");
  cmd_validate->add_option("model", validate_args.model_path, "model JSON file")->required();

  CLI::App* cmd_transform =
      app.add_subcommand("transform", "evaluate the transform density and the atom transform");
  add_common(cmd_transform, transform_args);
  std::string s_text;
  std::string y_text;
  cmd_transform->add_option("--s", s_text, "transform argument, re or re,im (Re >= 0)")
      ->required();
  cmd_transform->add_option("--y", y_text, "y grid a:b:n")->required();

  CLI::App* cmd_density =
      app.add_subcommand("density", "invert the transform to the bivariate density on a grid");
  add_common(cmd_density, density_args);
  std::string ys_text, xs_text;
  std::string format_name = "csv";
  std::string out_path;
  InversionParams params;
  int density_threads = 1;
  cmd_density->add_option("--ys", ys_text, "y grid a:b:n")->required();
  cmd_density->add_option("--xs", xs_text, "x grid a:b:n (keep a >= 0.01)")->required();
  cmd_density->add_option("--A", params.contour_shift, "contour shift (default 18.4)");
  cmd_density->add_option("--N", params.truncation_terms, "series terms (default 15)");
  cmd_density->add_option("--M", params.euler_terms, "Euler averaging terms (default 11)");
  cmd_density->add_option("--threads", density_threads, "worker threads over x columns");
  cmd_density->add_option("--format", format_name, "csv or json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_density->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* cmd_marginal = app.add_subcommand("marginal", "phase-type marginal of Z1 or Z2");
  add_common(cmd_marginal, marginal_args);
  int which = 1;
  std::string marginal_grid = "0.25:4:16";
  cmd_marginal->add_option("--which", which, "coordinate, 1 or 2")->required();
  cmd_marginal->add_option("--grid", marginal_grid, "CDF table grid a:b:n (default 0.25:4:16)");

  CLI::App* cmd_moments =
      app.add_subcommand("moments", "means, cross moment (both routes), covariance, correlation");
  add_common(cmd_moments, moments_args);

  CLI::App* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo estimate report");
  add_common(cmd_simulate, simulate_args);
  std::uint64_t sim_n = 100000;
  std::uint64_t sim_seed = 0;
  int sim_workers = 1;
  std::string dump_file;
  std::uint64_t dump_count = 100;
  cmd_simulate->add_option("--n", sim_n, "sample count (default 100000)")
      ->check(CLI::PositiveNumber);
  cmd_simulate->add_option("--seed", sim_seed, "RNG seed (default 0)");
  cmd_simulate->add_option("--workers", sim_workers, "worker threads; does not change output");
  cmd_simulate->add_option("--dump-paths", dump_file, "write JSON-lines path dump to this file");
  cmd_simulate->add_option("--dump-count", dump_count, "paths to dump (default 100)");

  CLI::App* cmd_check = app.add_subcommand("check", "run the consistency battery");
  add_common(cmd_check, check_args);
  CheckTolerances tol;
  std::uint64_t mc_n = 0;
  std::uint64_t check_seed = 0;
  int check_workers = 1;
  cmd_check->add_option("--mc", mc_n, "also run Monte Carlo checks with this many samples");
  cmd_check->add_option("--seed", check_seed, "RNG seed for --mc (default 0)");
  cmd_check->add_option("--workers", check_workers, "worker threads for --mc");
  cmd_check->add_option("--tol-normalization", tol.normalization, "normalization tolerance");
  cmd_check->add_option("--tol-lt", tol.lt_cross, "joint-LT cross-check tolerance");
  cmd_check->add_option("--tol-moment", tol.moment_relative, "relative moment tolerance");
  cmd_check->add_option("--tol-marginal", tol.marginal_exit, "marginal exit-identity tolerance");
  cmd_check->add_option("--mc-sigma", tol.mc_sigma, "Monte Carlo window in standard errors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitIoOrParse;
  }

  try {
    if (app.got_subcommand(cmd_validate)) {
      return run_validate(validate_args.model_path);
    }
    if (app.got_subcommand(cmd_transform)) {
      return run_transform(transform_args, s_text, y_text);
    }
    if (app.got_subcommand(cmd_density)) {
      return run_density(density_args, ys_text, xs_text, params, density_threads, format_name,
                         out_path);
    }
    if (app.got_subcommand(cmd_marginal)) {
      return run_marginal(marginal_args, which, marginal_grid);
    }
    if (app.got_subcommand(cmd_moments)) {
      return run_moments(moments_args);
    }
    if (app.got_subcommand(cmd_simulate)) {
      return run_simulate(simulate_args, sim_n, sim_seed, sim_workers, dump_file, dump_count);
    }
    if (app.got_subcommand(cmd_check)) {
      return run_check(check_args, tol, mc_n, check_seed, check_workers);
    }
  } catch (const ModelParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoOrParse;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoOrParse;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoOrParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidModel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidModel;
  }
  return kExitOk;
}
