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

#include "lepski/selection_fixed.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lepski/errors.h"
#include "support/oracles.h"

namespace lepski {
namespace {

Dataset SeededDataset(unsigned seed, int n, double sigma) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, sigma);
  Dataset data;
  data.x.resize(n, 1);
  data.y.resize(n);
  for (int i = 0; i < n; ++i) {
    data.x(i, 0) = unif(rng);
    data.y[i] = 2.0 * std::exp(-data.x(i, 0) * data.x(i, 0)) + normal(rng);
  }
  data.sigma = sigma;
  return data;
}

std::vector<Eigen::VectorXd> Preds(const std::vector<ConstrainedFit>& fits) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& f : fits) out.push_back(f.train_pred);
  return out;
}

GLConfig Config(double tau, double nu = 1.0) {
  GLConfig cfg;
  cfg.tau = tau;
  cfg.nu = nu;
  cfg.sigma = 0.1;
  return cfg;
}

TEST(RadiusGridTest, Examples) {
  EXPECT_EQ(MakeRadiusGrid(1.0, 0.5, 16).values,
            (std::vector<double>{0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4}));
  EXPECT_EQ(MakeRadiusGrid(1.0, 2.0, 4).values, (std::vector<double>{0, 2}));
  EXPECT_EQ(MakeRadiusGrid(1.0, 1.0, 1).values, (std::vector<double>{0, 1}));
  EXPECT_THROW(MakeRadiusGrid(0.0, 1.0, 4), InputError);
  EXPECT_THROW(MakeRadiusGrid(1.0, -1.0, 4), InputError);
  EXPECT_THROW(MakeRadiusGrid(1.0, 1.0, 0), InputError);
}

TEST(RadiusGridTest, Invariants) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unif(0.05, 3.0);
  for (int rep = 0; rep < 300; ++rep) {
    const double a = unif(rng);
    const double b = unif(rng);
    const int n = 1 + rep;
    const RadiusGrid g = MakeRadiusGrid(a, b, n);
    const double top = a * std::sqrt(n);
    EXPECT_EQ(g.values.front(), 0.0);
    EXPECT_EQ(g.values.back(), top);
    for (size_t i = 1; i < g.values.size(); ++i) {
      EXPECT_GT(g.values[i], g.values[i - 1]);
    }
    EXPECT_LE(g.values.size(), static_cast<size_t>(std::ceil(top / b)) + 1);
  }
}

TEST(TauTest, Examples) {
  EXPECT_EQ(TauMinFixed(1.0, 1.0), 80.0);
  EXPECT_DOUBLE_EQ(TOfTau(80.0, 1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(TOfTau(160.0, 1.0, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(TauMinFixed(4.0, 0.1), 16.0);
  EXPECT_THROW(TauMinFixed(0.0, 1.0), InputError);
  EXPECT_THROW(TauMinFixed(1.0, 0.0), InputError);
  EXPECT_THROW(TOfTau(-1.0, 1.0, 1.0), InputError);
}

TEST(ValidateGLConfigTest, WarnsOrThrowsBelowTauMin) {
  GLConfig cfg = Config(4.0);
  EXPECT_EQ(ValidateGLConfig(cfg).size(), 1u);
  cfg.theory_mode = true;
  EXPECT_THROW(ValidateGLConfig(cfg), ConstraintError);
  cfg.tau = 8.0;
  EXPECT_TRUE(ValidateGLConfig(cfg).empty());
  cfg.nu = 0.0;
  EXPECT_THROW(ValidateGLConfig(cfg), InputError);
}

TEST(GLCriterionTest, SingletonGrid) {
  const auto inst = testing::RandomInstance(1, 9, 1, 1.0);
  const GramEigen ge = EigenGram(inst.k, inst.y);
  const std::vector<ConstrainedFit> fits{FitConstrained(ge, 0.7)};
  const double tau = 1.3;
  const double nu = 0.6;
  const auto rows = GLCriterion(fits, Config(tau, nu), 9);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].bias_proxy, -2.0 * tau * 0.7 / 3.0, 1e-15);
  EXPECT_NEAR(rows[0].total, 2.0 * nu * tau * 0.7 / 3.0, 1e-15);
}

TEST(GLCriterionTest, HugeTauSelectsZero) {
  const auto inst = testing::RandomInstance(2, 12, 1, 1.0);
  const GramEigen ge = EigenGram(inst.k, inst.y);
  const std::vector<ConstrainedFit> fits{FitConstrained(ge, 0.0),
                                         FitConstrained(ge, 1.0)};
  const auto rows = GLCriterion(fits, Config(1e9), 12);
  EXPECT_EQ(rows[0].bias_proxy, 0.0);
  EXPECT_EQ(rows[0].total, 0.0);
  EXPECT_EQ(rows[0].argmax, 0);
  EXPECT_EQ(ArgminCriterion(rows), 0);
}

TEST(GLCriterionTest, ZeroResponses) {
  Dataset data;
  data.x = testing::RandomInstance(3, 20, 1, 1.0).x;
  data.y = Eigen::VectorXd::Zero(20);
  const RadiusGrid grid = MakeRadiusGrid(1.0, 0.5, 20);
  const SelectionResult sel =
      SelectRadius(data, Kernel::Gaussian(1.0, 1), grid, Config(2.0, 0.5));
  EXPECT_EQ(sel.r_hat, 0.0);
  EXPECT_EQ(sel.index, 0);
  for (const auto& row : sel.criterion) {
    EXPECT_NEAR(row.bias_proxy, -2.0 * 2.0 * row.r / std::sqrt(20.0), 1e-14);
    EXPECT_NEAR(row.total, 2.0 * 0.5 * 2.0 * row.r / std::sqrt(20.0), 1e-14);
  }
}

TEST(GLCriterionTest, RejectsBadInput) {
  EXPECT_THROW(GLCriterion({}, Config(1.0), 3), InputError);
  const auto inst = testing::RandomInstance(4, 5, 1, 1.0);
  const GramEigen ge = EigenGram(inst.k, inst.y);
  const std::vector<ConstrainedFit> unordered{FitConstrained(ge, 1.0),
                                              FitConstrained(ge, 0.5)};
  EXPECT_THROW(GLCriterion(unordered, Config(1.0), 5), InputError);
  const std::vector<ConstrainedFit> ok{FitConstrained(ge, 1.0)};
  EXPECT_THROW(GLCriterion(ok, Config(1.0), 6), InputError);
  EXPECT_THROW(ArgminCriterion({}), InputError);
}

TEST(SelectRadiusTest, SingletonGridEchoesRadius) {
  const Dataset data = SeededDataset(5, 30, 0.1);
  const SelectionResult sel = SelectRadius(
      data, Kernel::Gaussian(1.0, 1), RadiusGridFromValues({1.7}), Config(1.0));
  EXPECT_EQ(sel.r_hat, 1.7);
  EXPECT_EQ(sel.fit_hat.radius, 1.7);
}

TEST(SelectRadiusTest, SeededInstanceMatchesBruteForce) {
  const Dataset data = SeededDataset(42, 100, 0.1);
  const Kernel kernel = Kernel::Gaussian(1.0, 1);
  const RadiusGrid grid = MakeRadiusGrid(1.0, 0.25, 100);
  for (double tau : {0.05, 0.5, 8.0}) {
    const SelectionResult sel = SelectRadius(data, kernel, grid, Config(tau));
    const auto naive =
        testing::NaiveCriterion(Preds(sel.fits), grid.values, tau, 1.0, 100);
    const int best = testing::NaiveArgmin(naive);
    EXPECT_EQ(sel.index, best) << "tau " << tau;
    EXPECT_EQ(sel.r_hat, grid.values[best]);
    for (size_t i = 0; i < naive.size(); ++i) {
      EXPECT_NEAR(sel.criterion[i].total, naive[i].total, 1e-10);
      EXPECT_NEAR(sel.criterion[i].bias_proxy, naive[i].bias, 1e-10);
    }
  }
}

TEST(SelectRadiusTest, CriterionLowerBound) {
  for (unsigned seed = 0; seed < 100; ++seed) {
    const int n = 20 + static_cast<int>(seed % 30);
    const Dataset data = SeededDataset(seed, n, 0.1 + 0.01 * (seed % 7));
    const double tau = 0.05 * (1 + seed % 11);
    const double nu = 0.25 * (1 + seed % 5);
    const SelectionResult sel = SelectRadius(
        data, Kernel::Gaussian(0.5 + 0.1 * (seed % 6), 1),
        MakeRadiusGrid(1.0, 0.3, n), Config(tau, nu));
    for (const auto& row : sel.criterion) {
      EXPECT_GE(row.total, 2.0 * nu * tau * row.r / std::sqrt(n) - 1e-12);
      EXPECT_GE(row.argmax, 0);
      EXPECT_GE(sel.criterion[row.argmax].r, row.r);
    }
    for (int i = 0; i < sel.index; ++i) {
      EXPECT_GT(sel.criterion[i].total, sel.criterion[sel.index].total);
    }
  }
}

TEST(SelectRadiusTest, ArgminInvariantUnderShift) {
  const Dataset data = SeededDataset(8, 60, 0.2);
  const SelectionResult sel = SelectRadius(
      data, Kernel::Gaussian(1.0, 1), MakeRadiusGrid(1.0, 0.25, 60), Config(0.3));
  for (double shift : {-5.0, 0.0, 0.125, 3.0}) {
    std::vector<CriterionRow> rows = sel.criterion;
    for (auto& row : rows) row.total += shift;
    EXPECT_EQ(ArgminCriterion(rows), sel.index);
  }
}

TEST(SelectRadiusTest, PenaltyMonotoneInTau) {
  const Dataset data = SeededDataset(9, 50, 0.1);
  const Kernel kernel = Kernel::Gaussian(1.0, 1);
  const RadiusGrid grid = MakeRadiusGrid(1.0, 0.25, 50);
  const auto low = SelectRadius(data, kernel, grid, Config(0.2)).criterion;
  const auto high = SelectRadius(data, kernel, grid, Config(0.4)).criterion;
  for (size_t i = 0; i < low.size(); ++i) {
    EXPECT_LE(high[i].bias_proxy, low[i].bias_proxy);
    EXPECT_GE(high[i].variance_term, low[i].variance_term);
    if (low[i].r > 0.0) {
      EXPECT_GT(high[i].variance_term, low[i].variance_term);
    }
  }
}

TEST(SelectRadiusTest, UsesKernelDiagAndReportsWarnings) {
  Dataset data = SeededDataset(10, 25, 0.1);
  data.clip = 2.0;
  GLConfig cfg = Config(1.0);
  cfg.k_diag = 1e6;
  const SelectionResult sel = SelectRadius(data, Kernel::Gaussian(0.5, 1),
                                           MakeRadiusGrid(1.0, 0.5, 25), cfg);
  EXPECT_TRUE(sel.clipped);
  ASSERT_EQ(sel.warnings.size(), 1u);
  EXPECT_NE(sel.warnings[0].find("11.31"), std::string::npos) << sel.warnings[0];
  cfg.theory_mode = true;
  EXPECT_THROW(SelectRadius(data, Kernel::Gaussian(0.5, 1),
                            MakeRadiusGrid(1.0, 0.5, 25), cfg),
               ConstraintError);
}

}  // namespace
}  // namespace lepski
