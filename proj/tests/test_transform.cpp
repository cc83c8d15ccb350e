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
#include <cmath>
#include <limits>

#include <doctest.h>

#include "mphstar/transform.hpp"
#include "support/random_models.hpp"
#include "support/test_models.hpp"

using namespace mphstar;

namespace {

const Complex kProbeArgs[] = {{0.0, 0.0}, {0.7, 0.0}, {2.0, 0.0}, {0.5, 3.0}, {0.0, 1.5}};

double normalization_deviation(const BlockDecomposition& bd) {
  const TransformTriple t = triple_at(bd, Complex(0.0));
  const ComplexMatrix tail = solve(ComplexMatrix(-t.w_s), ComplexMatrix(t.eta_s));
  const Complex mass = bd.alpha_abs + atom_transform(bd, Complex(0.0)) +
                       (t.alpha_s * tail.col(0)).value();
  return std::abs(mass - 1.0);
}

}  // namespace

TEST_CASE("triple_at: single-state comonotone model (empty E0 branch)") {
  const BlockDecomposition bd = block_decompose(testing::model_a());
  for (Complex s : kProbeArgs) {
    const TransformTriple t = triple_at(bd, s);
    REQUIRE(t.w_s.rows() == 1);
    CHECK(std::abs(t.alpha_s(0) - Complex(1.0)) == 0.0);
    CHECK(std::abs(t.w_s(0, 0) - (-(3.0 + 2.0 * s))) <= 1e-14 * (1.0 + std::abs(s)));
    CHECK(std::abs(t.eta_s(0) - Complex(3.0)) <= 1e-14);
  }
}

TEST_CASE("triple_at: series model") {
  const BlockDecomposition bd = block_decompose(testing::model_b());
  for (Complex s : kProbeArgs) {
    const TransformTriple t = triple_at(bd, s);
    CHECK(std::abs(t.alpha_s(0) - 1.0 / (1.0 + s)) <= 1e-14);
    CHECK(std::abs(t.w_s(0, 0) - Complex(-2.0)) <= 1e-14);
    CHECK(std::abs(t.eta_s(0) - Complex(2.0)) <= 1e-14);
  }
  // W(0) built from the blocks is a stable [-2]
  const TransformTriple at_zero = triple_at(bd, Complex(0.0));
  CHECK(spectral_abscissa_bound(Matrix(at_zero.w_s.real())) == doctest::Approx(-2.0));
}

TEST_CASE("triple_at: atom model") {
  const BlockDecomposition bd = block_decompose(testing::model_c());
  for (Complex s : kProbeArgs) {
    const TransformTriple t = triple_at(bd, s);
    CHECK(std::abs(t.alpha_s(0) - 1.0 / (s + 2.0)) <= 1e-14);
    CHECK(std::abs(t.w_s(0, 0) - Complex(-1.0)) <= 1e-14);
    CHECK(std::abs(t.eta_s(0) - Complex(1.0)) <= 1e-14);
  }
}

TEST_CASE("triple_at: domain and stability") {
  const BlockDecomposition bd = block_decompose(testing::model_b());
  CHECK_THROWS_AS(triple_at(bd, Complex(-0.1, 0.0)), std::domain_error);

  for (std::uint64_t i = 0; i < 40; ++i) {
    const BlockDecomposition rd = block_decompose(testing::random_valid_model(i));
    const TransformTriple t = triple_at(rd, Complex(0.0));
    CHECK(t.alpha_s.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(t.eta_s.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(t.alpha_s.real().minCoeff() >= -1e-14);
    CHECK(t.eta_s.real().minCoeff() >= -1e-12);
    CHECK(spectral_abscissa_bound(Matrix(t.w_s.real())) < 0.0);
  }
}

TEST_CASE("atom_transform: competing exponentials and empty atoms") {
  const BlockDecomposition bd_c = block_decompose(testing::model_c());
  for (Complex s : kProbeArgs) {
    CHECK(std::abs(atom_transform(bd_c, s) - 1.0 / (s + 2.0)) <= 1e-14);
  }
  CHECK(atom_transform(bd_c, Complex(0.0)).real() == doctest::Approx(0.5).epsilon(1e-14));

  const BlockDecomposition bd_b = block_decompose(testing::model_b());
  CHECK(std::abs(atom_transform(bd_b, Complex(1.0))) == 0.0);  // eta0 = 0

  const BlockDecomposition bd_a = block_decompose(testing::model_a());
  CHECK(std::abs(atom_transform(bd_a, Complex(1.0))) == 0.0);  // E0 empty
}

TEST_CASE("density_transform: closed forms") {
  const BlockDecomposition bd_a = block_decompose(testing::model_a());
  for (Complex s : kProbeArgs) {
    for (double y : {0.3, 1.0, 2.5}) {
      const Complex expected = 3.0 * std::exp(-(3.0 + 2.0 * s) * y);
      CHECK(std::abs(density_transform(bd_a, s, y) - expected) <= 1e-13);
    }
  }

  const BlockDecomposition bd_b = block_decompose(testing::model_b());
  for (Complex s : kProbeArgs) {
    for (double y : {0.3, 1.0, 2.5}) {
      const Complex expected = 2.0 * std::exp(-2.0 * y) / (1.0 + s);
      CHECK(std::abs(density_transform(bd_b, s, y) - expected) <= 1e-13);
    }
  }

  CHECK_THROWS_AS(density_transform(bd_b, Complex(1.0), 0.0), std::domain_error);
}

TEST_CASE("density_transform: s = 0 mass balances atom and initial absorption") {
  // integral over y of alpha(0) e^{W(0) y} eta(0) equals alpha(0) (-W(0))^{-1} eta(0)
  CHECK(normalization_deviation(block_decompose(testing::model_b())) <= 1e-14);
  CHECK(normalization_deviation(block_decompose(testing::model_c())) <= 1e-14);
}

TEST_CASE("density_transform_grid: equals pointwise evaluation") {
  const BlockDecomposition bd_b = block_decompose(testing::model_b());
  Vector ys(3);
  ys << 0.5, 1.0, 1.5;
  const ComplexVector vals = density_transform_grid(bd_b, Complex(1.0), ys);
  CHECK(std::abs(vals(0) - std::exp(-1.0)) <= 1e-14);
  CHECK(std::abs(vals(1) - std::exp(-2.0)) <= 1e-14);
  CHECK(std::abs(vals(2) - std::exp(-3.0)) <= 1e-14);
  for (Eigen::Index i = 0; i < ys.size(); ++i) {
    CHECK(std::abs(vals(i) - density_transform(bd_b, Complex(1.0), ys(i))) <= 1e-12);
  }

  Vector single(1);
  single << 0.8;
  const ComplexVector one = density_transform_grid(bd_b, Complex(0.3, 0.7), single);
  CHECK(one(0) == density_transform(bd_b, Complex(0.3, 0.7), 0.8));

  const BlockDecomposition bd_a = block_decompose(testing::model_a());
  Vector ys2(2);
  ys2 << 1.0, 2.0;
  const ComplexVector vals_a = density_transform_grid(bd_a, Complex(0.0), ys2);
  CHECK(std::abs(vals_a(0) - 3.0 * std::exp(-3.0)) <= 1e-14);
  CHECK(std::abs(vals_a(1) - 3.0 * std::exp(-6.0)) <= 1e-14);

  Vector uneven(3);
  uneven << 0.5, 1.0, 1.7;
  CHECK_THROWS_AS(density_transform_grid(bd_b, Complex(1.0), uneven), std::invalid_argument);
}

TEST_CASE("density_transform_grid: pointwise agreement on random models") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const BlockDecomposition bd = block_decompose(testing::random_valid_model(i));
    Vector ys(5);
    ys << 0.4, 0.8, 1.2, 1.6, 2.0;
    const Complex s(0.6, 1.1);
    const ComplexVector vals = density_transform_grid(bd, s, ys);
    for (Eigen::Index j = 0; j < ys.size(); ++j) {
      CHECK(std::abs(vals(j) - density_transform(bd, s, ys(j))) <= 1e-12);
    }
  }
}

TEST_CASE("joint_lt: series model product form") {
  const MphStarModel model = testing::model_b();
  const BlockDecomposition bd = block_decompose(model);
  for (double s1 : {0.0, 0.4, 2.0}) {
    for (double s2 : {0.0, 0.9, 5.0}) {
      const Complex expected = 2.0 / ((1.0 + s2) * (2.0 + s1));
      CHECK(std::abs(joint_lt_from_density(bd, s1, s2) - expected) <= 1e-13);
      CHECK(std::abs(joint_lt_kulkarni(model, s1, s2) - expected) <= 1e-13);
    }
  }
  CHECK(std::abs(joint_lt_from_density(bd, Complex(0.0), Complex(0.0)) - 1.0) <= 1e-14);
  CHECK(std::abs(joint_lt_kulkarni(model, Complex(0.0), Complex(0.0)) - 1.0) <= 1e-14);
}

TEST_CASE("joint_lt: atom model closed form") {
  const MphStarModel model = testing::model_c();
  const BlockDecomposition bd = block_decompose(model);
  for (double s1 : {0.0, 0.4, 2.0}) {
    for (double s2 : {0.0, 0.9, 5.0}) {
      const Complex expected = 1.0 / (s2 + 2.0) + 1.0 / ((s2 + 2.0) * (s1 + 1.0));
      CHECK(std::abs(joint_lt_from_density(bd, s1, s2) - expected) <= 1e-13);
      CHECK(std::abs(joint_lt_kulkarni(model, s1, s2) - expected) <= 1e-13);
    }
  }
}

TEST_CASE("joint_lt: density route equals direct route on random models") {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const MphStarModel model = testing::random_valid_model(i);
    const BlockDecomposition bd = block_decompose(model);
    for (double s1 : {0.0, 0.1, 1.0, 5.0}) {
      for (double s2 : {0.0, 0.1, 1.0, 5.0}) {
        const double dev =
            std::abs(joint_lt_from_density(bd, s1, s2) - joint_lt_kulkarni(model, s1, s2));
        worst = std::max(worst, dev);
      }
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("normalization holds for random models including initial absorption") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const BlockDecomposition bd = block_decompose(testing::random_valid_model(i));
    CHECK(normalization_deviation(bd) <= 1e-10);
  }
}

TEST_CASE("density transform magnitude is nonincreasing in real s") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    const BlockDecomposition bd = block_decompose(testing::random_valid_model(i));
    for (double y : {0.4, 1.3}) {
      double previous = std::numeric_limits<double>::infinity();
      for (double s : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double magnitude = std::abs(density_transform(bd, Complex(s), y));
        CHECK(magnitude <= previous * (1.0 + 1e-12) + 1e-15);
        previous = magnitude;
      }
    }
  }
}

TEST_CASE("conjugate symmetry of the transform") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    const BlockDecomposition bd = block_decompose(testing::random_valid_model(i));
    for (Complex s : {Complex(0.3, 1.7), Complex(2.0, -4.0), Complex(0.0, 0.9)}) {
      const Complex direct = density_transform(bd, s, 0.9);
      const Complex mirrored = density_transform(bd, std::conj(s), 0.9);
      CHECK(std::abs(mirrored - std::conj(direct)) <= 1e-14 * (1.0 + std::abs(direct)));

      const Complex atom_direct = atom_transform(bd, s);
      const Complex atom_mirrored = atom_transform(bd, std::conj(s));
      CHECK(std::abs(atom_mirrored - std::conj(atom_direct)) <=
            1e-14 * (1.0 + std::abs(atom_direct)));
    }
  }
}
