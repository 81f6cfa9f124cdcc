// Copyright 2026 The lepski-rkhs Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lepski/kernels.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "Eigen/Eigenvalues"
#include "lepski/errors.h"
#include "support/oracles.h"

namespace lepski {
namespace {

Eigen::VectorXd Pt(std::initializer_list<double> v) {
  Eigen::VectorXd p(v.size());
  int i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

TEST(GaussianEvalTest, DiagonalIsWidthPower) {
  EXPECT_DOUBLE_EQ(GaussianEval(1.0, 2, Pt({0.3, -1.0}), Pt({0.3, -1.0})), 1.0);
  EXPECT_DOUBLE_EQ(GaussianEval(2.0, 1, Pt({4.0}), Pt({4.0})), 0.5);
}

TEST(GaussianEvalTest, UnitDistance) {
  EXPECT_NEAR(GaussianEval(1.0, 1, Pt({0.0}), Pt({1.0})), std::exp(-1.0),
              1e-15);
}

TEST(GaussianEvalTest, SymmetricAndBounded) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::VectorXd a = Pt({normal(rng), normal(rng)});
    const Eigen::VectorXd b = Pt({normal(rng), normal(rng)});
    const double w = 0.2 + std::abs(normal(rng));
    const double kab = GaussianEval(w, 2, a, b);
    EXPECT_EQ(kab, GaussianEval(w, 2, b, a));
    EXPECT_GE(kab, 0.0);
    EXPECT_LE(kab, std::pow(w, -2.0));
  }
}

TEST(GaussianEvalTest, DimensionMismatchIsInputError) {
  EXPECT_THROW(GaussianEval(1.0, 2, Pt({0.0}), Pt({0.0})), InputError);
  EXPECT_THROW(GaussianEval(0.0, 1, Pt({0.0}), Pt({0.0})), InputError);
  const Kernel k = Kernel::Gaussian(1.0, 2);
  EXPECT_THROW(k(Pt({0.0}), Pt({0.0, 1.0})), InputError);
}

TEST(KernelTest, GaussianDiagSupIsExact) {
  EXPECT_EQ(Kernel::Gaussian(0.5, 3).diag_sup(), std::pow(0.5, -3.0));
  EXPECT_EQ(Kernel::Gaussian(2.0, 1).diag_sup(), 0.5);
  EXPECT_THROW(Kernel::Gaussian(-1.0, 1), InputError);
  EXPECT_THROW(Kernel::Gaussian(1.0, 0), InputError);
}

TEST(GramTest, Examples) {
  const Kernel k = Kernel::Gaussian(1.0, 1);
  EXPECT_EQ(Gram(k, Points::Constant(1, 1, 0.0)), Eigen::MatrixXd::Ones(1, 1));
  EXPECT_EQ(Gram(k, Points::Zero(2, 1)), Eigen::MatrixXd::Ones(2, 2));
  Points x(2, 1);
  x << 0.0, 1.0;
  const Eigen::MatrixXd g = Gram(k, x);
  EXPECT_DOUBLE_EQ(g(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(g(1, 1), 1.0);
  EXPECT_NEAR(g(0, 1), std::exp(-1.0), 1e-15);
  EXPECT_EQ(g(0, 1), g(1, 0));
}

TEST(GramTest, MatchesEntrywiseOracle) {
  const auto inst = testing::RandomInstance(11, 12, 3, 0.7);
  const Eigen::MatrixXd g = Gram(Kernel::Gaussian(0.7, 3), inst.x);
  EXPECT_LE((g - inst.k).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_THROW(Gram(Kernel::Gaussian(1.0, 2), inst.x), InputError);
  EXPECT_THROW(Gram(Kernel::Gaussian(1.0, 3), Points(0, 3)), InputError);
}

TEST(GramTest, CrossGramMatchesPairwiseEval) {
  const auto a = testing::RandomInstance(1, 5, 2, 1.3);
  const auto b = testing::RandomInstance(2, 7, 2, 1.3);
  const Kernel k = Kernel::Gaussian(1.3, 2);
  const Eigen::MatrixXd c = CrossGram(k, a.x, b.x);
  ASSERT_EQ(c.rows(), 5);
  ASSERT_EQ(c.cols(), 7);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 7; ++j) {
      EXPECT_NEAR(c(i, j), k(a.x.row(i).transpose(), b.x.row(j).transpose()),
                  1e-15);
    }
  }
}

TEST(GramTest, GaussianGramsArePsd) {
  std::mt19937 rng(2024);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 50);
    const int d = 1 + static_cast<int>(rng() % 3);
    const double w = 0.1 + (rng() % 1000) / 500.0;
    const auto inst = testing::RandomInstance(rep, n, d, w, 2.0);
    const Eigen::MatrixXd g = Gram(Kernel::Gaussian(w, d), inst.x);
    const Eigen::VectorXd ev =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g, Eigen::EigenvaluesOnly)
            .eigenvalues();
    EXPECT_GE(ev.minCoeff(), -1e-10 * ev.maxCoeff()) << "rep " << rep;
    EXPECT_LE(g.diagonal().maxCoeff(), std::pow(w, -d));
  }
}

TEST(PrecomputedKernelTest, ValidatesGram) {
  Eigen::MatrixXd ok(2, 2);
  ok << 1.0, 0.5, 0.5, 1.0;
  const Kernel k = Kernel::Precomputed(ok, 1.0);
  EXPECT_FALSE(k.is_gaussian());
  EXPECT_EQ(Gram(k, Points::Zero(2, 1)), ok);
  EXPECT_THROW(Gram(k, Points::Zero(3, 1)), InputError);
  EXPECT_THROW(k(Pt({0.0}), Pt({0.0})), InputError);

  Eigen::MatrixXd asym = ok;
  asym(0, 1) += 1e-6;
  EXPECT_THROW(Kernel::Precomputed(asym, 1.0), InputError);
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  EXPECT_THROW(Kernel::Precomputed(indefinite, 1.0), InputError);
  EXPECT_THROW(Kernel::Precomputed(ok, 0.5), InputError);
  EXPECT_THROW(Kernel::Precomputed(ok, 0.0), InputError);
}

TEST(FamilySupDistanceTest, Examples) {
  EXPECT_EQ(FamilySupDistanceBound(3.0, 3.0), 0.0);
  EXPECT_NEAR(FamilySupDistanceBound(std::sqrt(2.0), 1.0), 1.0 / std::sqrt(2.0),
              1e-15);
  EXPECT_NEAR(FamilySupDistanceBound(2.0, 1.0), std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_EQ(FamilySupDistanceBound(2.0, 1.0), FamilySupDistanceBound(1.0, 2.0));
  EXPECT_THROW(FamilySupDistanceBound(0.0, 1.0), InputError);
}

// Dense sample of |exp(-t^2/g^2) - exp(-t^2/e^2)| over t = |x1 - x2|.
TEST(FamilySupDistanceTest, DominatesDenseSample) {
  const WidthGrid grid = MakeWidthGrid(0.25, 4.0, 1.7);
  for (double g : grid.values) {
    for (double e : grid.values) {
      double sup = 0.0;
      for (int i = 0; i <= 20000; ++i) {
        const double t = 10.0 * i / 20000.0;
        sup = std::max(sup, std::abs(std::exp(-t * t / (g * g)) -
                                     std::exp(-t * t / (e * e))));
      }
      const double bound = FamilySupDistanceBound(g, e);
      EXPECT_LE(sup, bound + 1e-9) << g << " " << e;
      EXPECT_LT(bound, 1.0);
    }
  }
}

TEST(CoveringNumberTest, Examples) {
  EXPECT_EQ(CoveringNumberBound(1.0, 1.0, 10.0), 1.0);
  EXPECT_DOUBLE_EQ(CoveringNumberBound(0.5, 1.0, 1.0), 2.0);
  EXPECT_NEAR(CoveringNumberBound(0.5, 1.0, std::exp(1.0)), 6.0, 1e-9);
  EXPECT_THROW(CoveringNumberBound(0.0, 1.0, 2.0), InputError);
  EXPECT_THROW(CoveringNumberBound(0.5, 2.0, 1.0), InputError);
}

TEST(CoveringNumberTest, NonIncreasingInScale) {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 1000; ++i) {
    const double v = CoveringNumberBound(i / 1000.0, 0.5, 3.0);
    EXPECT_LE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(CoveringNumberBound(1.0 - 1e-12, 1.0, std::exp(1.0)), 3.0, 1e-9);
}

TEST(EntropyIntegralTest, Examples) {
  EXPECT_NEAR(EntropyIntegralBound(2.0, 2.0), std::log(2.0) / 2 + 1, 1e-9);
  EXPECT_NEAR(EntropyIntegralBound(2.0, 2.0), 1.34657, 1e-5);
  EXPECT_NEAR(EntropyIntegralBound(1.0, std::exp(1.0)), std::log(6.0) / 2 + 1,
              1e-9);
  EXPECT_NEAR(EntropyIntegralBound(1.0, std::exp(2.0)), std::log(10.0) / 2 + 1,
              1e-9);
  EXPECT_THROW(EntropyIntegralBound(2.0, 1.0), InputError);
}

TEST(JConstantTest, Examples) {
  auto oracle = [](double l) {
    return std::sqrt(81.0 * (std::log(8.0 * l + 4.0) + 2.0) + 1.0);
  };
  EXPECT_NEAR(JConstantBound(1.0, 1.0), oracle(0.0), 1e-9);
  EXPECT_NEAR(JConstantBound(1.0, 1.0), 16.592, 1e-3);
  EXPECT_NEAR(JConstantBound(1.0, std::exp(1.0)), 19.087, 1e-3);
  EXPECT_NEAR(JConstantBound(1.0, std::exp(4.0)), oracle(4.0), 1e-9);
  EXPECT_NEAR(JConstantBound(1.0, std::exp(1.0)), oracle(1.0), 1e-9);
  EXPECT_NEAR(JConstantBound(0.5, 2.0), oracle(std::log(4.0)), 1e-9);
  EXPECT_THROW(JConstantBound(0.0, 1.0), InputError);
}

TEST(JConstantTest, MonotoneAndAtLeastOne) {
  double prev = 0.0;
  for (double v = 1.0; v < 1e6; v *= 1.5) {
    const double j = JConstantBound(1.0, v);
    EXPECT_GE(j, 1.0);
    EXPECT_GE(j, prev);
    prev = j;
    EXPECT_GE(EntropyIntegralBound(1.0, v * 1.5), EntropyIntegralBound(1.0, v));
  }
}

TEST(WidthGridTest, Examples) {
  EXPECT_EQ(MakeWidthGrid(1.0, 4.0, 2.0).values,
            (std::vector<double>{1.0, 2.0, 4.0}));
  EXPECT_EQ(MakeWidthGrid(3.0, 3.0, 2.0).values, (std::vector<double>{3.0}));
  EXPECT_EQ(MakeWidthGrid(1.0, 3.0, 2.0).values,
            (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_THROW(MakeWidthGrid(1.0, 3.0, 1.0), InputError);
  EXPECT_THROW(MakeWidthGrid(3.0, 1.0, 2.0), InputError);
}

TEST(WidthGridTest, InvariantsOverRandomParameters) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const double u = 0.05 + unif(rng);
    const double v = u * (1.0 + 50.0 * unif(rng));
    const double c = 1.05 + 3.0 * unif(rng);
    const WidthGrid g = MakeWidthGrid(u, v, c);
    ASSERT_FALSE(g.values.empty());
    EXPECT_EQ(g.values.front(), u);
    EXPECT_EQ(g.values.back(), v);
    for (size_t i = 1; i < g.values.size(); ++i) {
      EXPECT_GT(g.values[i], g.values[i - 1]);
    }
    const int l = static_cast<int>(std::ceil(std::log(v / u) / std::log(c)));
    EXPECT_LE(static_cast<int>(g.values.size()), std::max(l, 0) + 1);
  }
}

TEST(WidthGridTest, FromValuesSortsAndDedupes) {
  EXPECT_EQ(WidthGridFromValues({2.0, 0.5, 1.0, 2.0}).values,
            (std::vector<double>{0.5, 1.0, 2.0}));
  EXPECT_THROW(WidthGridFromValues({}), InputError);
  EXPECT_THROW(WidthGridFromValues({1.0, -1.0}), InputError);
}

}  // namespace
}  // namespace lepski
