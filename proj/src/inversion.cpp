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
#include "mphstar/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "mphstar/format.hpp"

namespace mphstar {

namespace {

constexpr double kClampFraction = 1e-7;

std::vector<double> binomial_row(int m) {
  std::vector<double> row(static_cast<std::size_t>(m) + 1);
  row[0] = 1.0;
  for (int i = 1; i <= m; ++i) {
    row[i] = row[i - 1] * (m - i + 1) / i;
  }
  return row;
}

Complex contour_node(double shift, int k, double x) {
  return Complex(shift / (2.0 * x), k * std::numbers::pi / x);
}

// Euler acceleration of the folded alternating contour sums.  `terms`
// holds the transform values at the nodes k = 0..N+M in order.
EulerInversion euler_fold(const std::vector<Complex>& terms, double x,
                          const InversionParams& params) {
  const int n = params.truncation_terms;
  const int m = params.euler_terms;

  Complex running = 0.5 * terms[0];
  std::vector<Complex> partial(static_cast<std::size_t>(n + m) + 1);
  partial[0] = running;
  double sign = -1.0;
  for (int k = 1; k <= n + m; ++k) {
    running += sign * terms[static_cast<std::size_t>(k)].real();
    partial[static_cast<std::size_t>(k)] = running;
    sign = -sign;
  }

  const std::vector<double> binom = binomial_row(m);
  Complex accelerated = 0.0;
  for (int i = 0; i <= m; ++i) {
    accelerated += binom[static_cast<std::size_t>(i)] * partial[static_cast<std::size_t>(n + i)];
  }
  accelerated *= std::ldexp(1.0, -m);
  accelerated *= std::exp(params.contour_shift / 2.0) / x;
  return {accelerated.real(), std::abs(accelerated.imag())};
}

// Exact 2x2 determinant via Kahan's fma scheme: returns a correctly
// rounded a*d - b*c, in particular exactly 0 when the true value is 0.
double exact_det2(double a, double b, double c, double d) {
  const double w = b * c;
  const double e = std::fma(b, c, -w);
  const double f = std::fma(a, d, -w);
  return f - e;
}

std::uint64_t fnv1a_update(std::uint64_t hash, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t fnv1a_doubles(std::uint64_t hash, const double* data, Eigen::Index count) {
  return fnv1a_update(hash, data, static_cast<std::size_t>(count) * sizeof(double));
}

std::string decomposition_hash(const BlockDecomposition& bd) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Eigen::Index p : bd.perm) {
    h = fnv1a_update(h, &p, sizeof(p));
  }
  for (const Matrix* m : {&bd.q00, &bd.q0p, &bd.qp0, &bd.qpp}) {
    h = fnv1a_doubles(h, m->data(), m->size());
  }
  h = fnv1a_doubles(h, bd.alpha0.data(), bd.alpha0.size());
  h = fnv1a_doubles(h, bd.alpha_plus.data(), bd.alpha_plus.size());
  h = fnv1a_doubles(h, bd.eta0.data(), bd.eta0.size());
  h = fnv1a_doubles(h, bd.eta_plus.data(), bd.eta_plus.size());
  h = fnv1a_doubles(h, bd.r1_plus.data(), bd.r1_plus.size());
  h = fnv1a_doubles(h, bd.r2_plus.data(), bd.r2_plus.size());
  h = fnv1a_doubles(h, bd.r2_zero.data(), bd.r2_zero.size());
  h = fnv1a_doubles(h, &bd.alpha_abs, 1);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void require_grid(const Vector& grid, const char* name) {
  if (grid.size() == 0) {
    throw std::invalid_argument(std::string("density_grid: empty ") + name + " grid");
  }
  if (!(grid(0) > 0.0)) {
    throw std::invalid_argument(std::string("density_grid: ") + name + " grid must be positive");
  }
  for (Eigen::Index i = 1; i < grid.size(); ++i) {
    if (!(grid(i) > grid(i - 1))) {
      throw std::invalid_argument(std::string("density_grid: ") + name +
                                  " grid must be strictly ascending");
    }
  }
}

}  // namespace

void validate_params(const InversionParams& params) {
  if (!(params.contour_shift > 0.0)) {
    throw std::invalid_argument("inversion: contour_shift must be positive");
  }
  if (params.truncation_terms < 1 || params.euler_terms < 1) {
    throw std::invalid_argument("inversion: term counts must be at least 1");
  }
}

EulerInversion euler_invert(const std::function<Complex(Complex)>& transform, double x,
                            const InversionParams& params) {
  validate_params(params);
  if (!(x > 0.0)) {
    throw std::domain_error("euler_invert: x must be positive");
  }
  const int total = params.truncation_terms + params.euler_terms;
  std::vector<Complex> terms(static_cast<std::size_t>(total) + 1);
  for (int k = 0; k <= total; ++k) {
    terms[static_cast<std::size_t>(k)] = transform(contour_node(params.contour_shift, k, x));
  }
  return euler_fold(terms, x, params);
}

double invert_density(const BlockDecomposition& bd, double y, double x,
                      const InversionParams& params) {
  if (!(y > 0.0)) {
    throw std::domain_error("invert_density: y must be positive");
  }
  return euler_invert([&](Complex s) { return density_transform(bd, s, y); }, x, params).value;
}

double invert_atom_density(const BlockDecomposition& bd, double x, const InversionParams& params) {
  if (bd.n_zero == 0) {
    validate_params(params);
    if (!(x > 0.0)) {
      throw std::domain_error("invert_atom_density: x must be positive");
    }
    return 0.0;
  }
  return euler_invert([&](Complex s) { return atom_transform(bd, s); }, x, params).value;
}

bool proportional_rewards(const BlockDecomposition& bd, double* ratio) {
  // Any positive second reward on E0 pairs with r1 = 0 and breaks
  // proportionality immediately.
  for (Eigen::Index i = 0; i < bd.n_zero; ++i) {
    if (bd.r2_zero(i) != 0.0) return false;
  }
  Eigen::Index anchor = 0;
  bd.r1_plus.maxCoeff(&anchor);
  const double r1a = bd.r1_plus(anchor);
  const double r2a = bd.r2_plus(anchor);
  if (r2a == 0.0) {
    // c would be 0, i.e. r2 identically zero; excluded by validation.
    return false;
  }
  for (Eigen::Index i = 0; i < bd.n_plus; ++i) {
    const double det = exact_det2(bd.r2_plus(i), r2a, bd.r1_plus(i), r1a);
    const double scale =
        std::max(std::abs(bd.r2_plus(i) * r1a), std::abs(r2a * bd.r1_plus(i)));
    // Up to a few ulp of cross-product slop: rows built as c * r1 in
    // double arithmetic round entrywise and must still be caught.
    if (std::abs(det) > 4.0 * std::numeric_limits<double>::epsilon() * scale) {
      return false;
    }
  }
  if (ratio != nullptr) {
    *ratio = r2a / r1a;
  }
  return true;
}

DensityGrid density_grid(const BlockDecomposition& bd, const Vector& ys, const Vector& xs,
                         const InversionParams& params, int threads) {
  validate_params(params);
  require_grid(ys, "y");
  require_grid(xs, "x");

  DensityGrid grid;
  grid.ys = ys;
  grid.xs = xs;
  grid.params = params;
  grid.model_hash = decomposition_hash(bd);
  grid.singular_warning = proportional_rewards(bd);
  grid.values.resize(ys.size(), xs.size());
  grid.atom.resize(xs.size());

  double step = ys.size() > 1 ? ys(1) - ys(0) : 0.0;
  bool equispaced = true;
  for (Eigen::Index i = 1; i < ys.size(); ++i) {
    if (std::abs(ys(i) - ys(i - 1) - step) > 1e-9 * std::max(1.0, step)) {
      equispaced = false;
      break;
    }
  }

  const int total = params.truncation_terms + params.euler_terms;
  auto run_column = [&](Eigen::Index col) {
    const double x = xs(col);
    // All contour values for this column, node-major so each y folds its
    // terms in fixed order.
    std::vector<std::vector<Complex>> node_values(static_cast<std::size_t>(total) + 1);
    for (int k = 0; k <= total; ++k) {
      const Complex s = contour_node(params.contour_shift, k, x);
      auto& column = node_values[static_cast<std::size_t>(k)];
      column.resize(static_cast<std::size_t>(ys.size()));
      if (equispaced) {
        const ComplexVector vals = density_transform_grid(bd, s, ys);
        for (Eigen::Index iy = 0; iy < ys.size(); ++iy) {
          column[static_cast<std::size_t>(iy)] = vals(iy);
        }
      } else {
        const TransformTriple t = triple_at(bd, s);
        for (Eigen::Index iy = 0; iy < ys.size(); ++iy) {
          column[static_cast<std::size_t>(iy)] = density_transform(t, ys(iy));
        }
      }
    }
    std::vector<Complex> terms(static_cast<std::size_t>(total) + 1);
    for (Eigen::Index iy = 0; iy < ys.size(); ++iy) {
      for (int k = 0; k <= total; ++k) {
        terms[static_cast<std::size_t>(k)] =
            node_values[static_cast<std::size_t>(k)][static_cast<std::size_t>(iy)];
      }
      grid.values(iy, col) = euler_fold(terms, x, params).value;
    }
    grid.atom(col) = invert_atom_density(bd, x, params);
  };

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(xs.size())));
  if (workers == 1) {
    for (Eigen::Index col = 0; col < xs.size(); ++col) run_column(col);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (Eigen::Index col = w; col < xs.size(); col += workers) run_column(col);
      });
    }
    for (auto& t : pool) t.join();
  }

  // Clamp inversion noise; keep anything larger as an accuracy failure.
  double max_value = 0.0;
  max_value = std::max(max_value, grid.values.size() > 0 ? grid.values.maxCoeff() : 0.0);
  max_value = std::max(max_value, grid.atom.size() > 0 ? grid.atom.maxCoeff() : 0.0);
  const double clamp_floor = -kClampFraction * max_value;
  auto clamp = [&](double& v, double y, double x) {
    if (v < 0.0) {
      if (v >= clamp_floor) {
        v = 0.0;
        ++grid.clamped_count;
      } else {
        grid.accuracy_failures.push_back({y, x, v});
      }
    }
  };
  for (Eigen::Index iy = 0; iy < ys.size(); ++iy) {
    for (Eigen::Index ix = 0; ix < xs.size(); ++ix) {
      clamp(grid.values(iy, ix), ys(iy), xs(ix));
    }
  }
  for (Eigen::Index ix = 0; ix < xs.size(); ++ix) {
    clamp(grid.atom(ix), 0.0, xs(ix));
  }
  return grid;
}

void write_csv(const DensityGrid& grid, std::ostream& out) {
  out << "y,x,f\n";
  for (Eigen::Index ix = 0; ix < grid.xs.size(); ++ix) {
    out << "0," << format_significant(grid.xs(ix), 17) << ','
        << format_significant(grid.atom(ix), 17) << '\n';
  }
  for (Eigen::Index iy = 0; iy < grid.ys.size(); ++iy) {
    for (Eigen::Index ix = 0; ix < grid.xs.size(); ++ix) {
      out << format_significant(grid.ys(iy), 17) << ',' << format_significant(grid.xs(ix), 17)
          << ',' << format_significant(grid.values(iy, ix), 17) << '\n';
    }
  }
}

std::string to_json(const DensityGrid& grid) {
  JsonWriter w(17);
  w.begin_object();
  w.key("ys").begin_array();
  for (Eigen::Index i = 0; i < grid.ys.size(); ++i) w.value(grid.ys(i));
  w.end_array();
  w.key("xs").begin_array();
  for (Eigen::Index i = 0; i < grid.xs.size(); ++i) w.value(grid.xs(i));
  w.end_array();
  w.key("values").begin_array();
  for (Eigen::Index iy = 0; iy < grid.ys.size(); ++iy) {
    w.begin_array();
    for (Eigen::Index ix = 0; ix < grid.xs.size(); ++ix) w.value(grid.values(iy, ix));
    w.end_array();
  }
  w.end_array();
  w.key("atom").begin_array();
  for (Eigen::Index i = 0; i < grid.atom.size(); ++i) w.value(grid.atom(i));
  w.end_array();
  w.key("model_hash").value(std::string_view(grid.model_hash));
  w.key("params").begin_object();
  w.key("A").value(grid.params.contour_shift);
  w.key("N").value(grid.params.truncation_terms);
  w.key("M").value(grid.params.euler_terms);
  w.end_object();
  w.key("clamped_count").value(grid.clamped_count);
  w.key("accuracy_failures").begin_array();
  for (const auto& f : grid.accuracy_failures) {
    w.begin_object();
    w.key("y").value(f.y);
    w.key("x").value(f.x);
    w.key("value").value(f.value);
    w.end_object();
  }
  w.end_array();
  w.key("singular_warning").value(grid.singular_warning);
  w.end_object();
  return w.str();
}

}  // namespace mphstar
