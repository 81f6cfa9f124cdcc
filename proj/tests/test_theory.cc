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

#include "lepski/theory.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lepski/errors.h"

namespace lepski {
namespace {

TEST(ApproxBoundTest, Examples) {
  EXPECT_DOUBLE_EQ(ApproxBound({1.0, 0.5}, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(ApproxBound({1.0, 0.5}, 4.0), 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(ApproxBound({2.0, 0.5}, 1.0), 16.0);
  EXPECT_THROW(ApproxBound({1.0, 0.5}, 0.0), InputError);
  EXPECT_THROW(ApproxBound({1.0, 1.0}, 1.0), InputError);
  EXPECT_THROW(ApproxBound({0.0, 0.5}, 1.0), InputError);
}

TEST(ApproxBoundTest, StrictlyMonotone) {
  for (double beta : {0.1, 0.5, 0.9}) {
    for (double r = 0.1; r < 50.0; r *= 1.3) {
      EXPECT_GT(ApproxBound({1.5, beta}, r), ApproxBound({1.5, beta}, r * 1.3));
      EXPECT_LT(ApproxBound({1.5, beta}, r), ApproxBound({1.6, beta}, r));
    }
  }
}

TEST(ShiftBoundTest, Examples) {
  EXPECT_DOUBLE_EQ(IInftyShiftBound(0.37, 2.0, 1.5, 1.5), 0.37);
  EXPECT_DOUBLE_EQ(IInftyShiftBound(0.0, 1.0, 1.0, 3.0), 4.0);
  EXPECT_DOUBLE_EQ(IInftyShiftBound(1.0, 4.0, 2.0, 3.0), 9.0);
  EXPECT_THROW(IInftyShiftBound(1.0, 1.0, 2.0, 1.0), InputError);
}

TEST(ScaledUpperTest, Examples) {
  EXPECT_EQ(ScaledIInftyUpper(2.0, 1.0, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(ScaledIInftyUpper(2.0, 1.0, 1.0), 0.25);
  EXPECT_DOUBLE_EQ(ScaledIInftyUpper(2.0, 3.0, 0.0), 9.0);
  EXPECT_THROW(ScaledIInftyUpper(0.0, 1.0, 1.0), InputError);
}

TEST(ScaledUpperTest, ContinuousAtNormAndNonNegative) {
  EXPECT_LT(ScaledIInftyUpper(2.0, 1.0, 2.0 - 1e-9), 1e-18);
  for (double r = 0.0; r < 5.0; r += 0.01) {
    EXPECT_GE(ScaledIInftyUpper(2.0, 1.5, r), 0.0);
  }
}

// For g = alpha k_w(z, .), |g|_inf = |alpha| w^-d = |g|_H sqrt(k_diag), which
// is what the scaled upper bound needs to be dominated by the shift bound.
TEST(ScaledUpperTest, SandwichWithShiftBound) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 500; ++rep) {
    const double w = 0.3 + 2.0 * unif(rng);
    const int d = 1 + rep % 3;
    const double k_diag = std::pow(w, -d);
    const double alpha = 0.1 + 3.0 * unif(rng);
    const double h_norm = alpha * std::sqrt(k_diag);
    const double sup = alpha * k_diag;
    const double s = 2.0 * h_norm * unif(rng);
    const double r = s * unif(rng);
    EXPECT_LE(ScaledIInftyUpper(h_norm, sup, r),
              IInftyShiftBound(ScaledIInftyUpper(h_norm, sup, s), k_diag, r, s) +
                  1e-12);
  }
}

TEST(TBoundTest, Examples) {
  EXPECT_EQ(BoundTBound(1.0, 1.0, 1.0, 0.0, 1.0, 10, 0.0), 0.0);
  EXPECT_NEAR(BoundTBound(1.0, 1.0, 1.0, 1.0, 1.0, 1, 0.0), 234.0 + 16.0 / 3,
              1e-12);
  EXPECT_NEAR(BoundTBound(1.0, 1.0, 1.0, 1.0, 1.0, 4, 0.0), 117.0 + 4.0 / 3,
              1e-12);
  EXPECT_THROW(BoundTBound(1.0, 1.0, 1.0, 1.0, 0.5, 4, 0.0), InputError);
  EXPECT_THROW(BoundTBound(1.0, 1.0, 1.0, 1.0, 1.0, 0, 0.0), InputError);
}

TEST(TVaryBoundTest, Examples) {
  EXPECT_EQ(BoundTVaryBound(1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 10, 0.0), 0.0);
  EXPECT_NEAR(BoundTVaryBound(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1, 0.0),
              344.0 + 16.0 / 3, 1e-12);
  EXPECT_NEAR(BoundTVaryBound(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1, 1.0),
              354.0 + 16.0 / 3, 1e-12);
  EXPECT_THROW(BoundTVaryBound(1.0, 1.0, 1.0, 1.0, 1.0, 0.9, 1, 0.0),
               InputError);
  EXPECT_THROW(BoundTVaryBound(0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1, 0.0),
               InputError);
}

TEST(TBoundTest, LinearInRadiusAndAdditiveInI) {
  for (double r : {0.5, 1.0, 3.0}) {
    const double base = BoundTBound(0.7, 2.0, 0.3, r, 2.0, 50, 0.0);
    EXPECT_NEAR(BoundTBound(0.7, 2.0, 0.3, 2 * r, 2.0, 50, 0.0), 2 * base,
                1e-12 * base);
    EXPECT_NEAR(BoundTBound(0.7, 2.0, 0.3, r, 2.0, 50, 0.4), base + 4.0,
                1e-12);
    const double vbase = BoundTVaryBound(3.0, 0.7, 2.0, 0.3, r, 2.0, 50, 0.0);
    EXPECT_NEAR(BoundTVaryBound(3.0, 0.7, 2.0, 0.3, 2 * r, 2.0, 50, 0.0),
                2 * vbase, 1e-12 * vbase);
    EXPECT_NEAR(BoundTVaryBound(3.0, 0.7, 2.0, 0.3, r, 2.0, 50, 0.4),
                vbase + 4.0, 1e-12);
  }
}

TEST(RateEnvelopeTest, Examples) {
  EXPECT_DOUBLE_EQ(RateEnvelopeFixed(1.0, 0.0, 1.0, 1.0, 0.5), 1.0);
  EXPECT_NEAR(RateEnvelopeFixed(1.0, 0.0, 1.0, 64.0, 0.5), 0.25, 1e-15);
  EXPECT_NEAR(RateEnvelopeFixed(0.0, 1.0, 2.0, 16.0, 1.0 / 3.0), 0.5, 1e-15);
  EXPECT_NEAR(RateEnvelopeGauss(0.0, 1.0, 2.0, 16.0, 1.0 / 3.0), 0.5, 1e-15);
  EXPECT_THROW(RateEnvelopeFixed(1.0, 1.0, 1.0, 1.0, 1.5), InputError);
}

TEST(OracleTermTest, Arithmetic) {
  EXPECT_DOUBLE_EQ(OracleTermFixed(1.0, 2.0, 3.0, 2.0, 4, 1.5, 0.5),
                   (1.0 + 1.0) * (3.0 + 1.5));
  EXPECT_DOUBLE_EQ(OracleTermFixed(1.0, 2.0, 3.0, 2.0, 4, 0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(OracleTermGauss(1.0, 2.0, 3.0, 2.0, 4, 4.0, 2, 1.5, 0.5),
                   2.0 * (2.0 * 2.0 * 1.5 / 4.0 / 2.0 + 1.5));
}

// Fixed-kernel adaptive bound written out with k_diag = sigma = C = tau =
// nu = n = 1:
//   max{2r + (1 + 97/80 + 1/2400)(40 I + 4r),
//       12r + 97r/40 + r/1200} + 80 I + 2 e.
TEST(LepskiBoundTest, UnitParameters) {
  const LepskiBoundParams p{1.0, 1.0, 1.0, 1.0, 1.0, 1};
  const double f = 1.0 + 97.0 / 80.0 + 1.0 / 2400.0;
  for (double r : {0.0, 0.5, 2.0}) {
    for (double i : {0.0, 0.1, 1.0}) {
      const double expected =
          std::max(2 * r + f * (40 * i + 4 * r), 12 * r + 97 * r / 40 + r / 1200) +
          80 * i + 2 * 0.3;
      EXPECT_NEAR(LepskiBoundTerm(p, {1.0, r, i, 0.3}), expected, 1e-12);
    }
  }
}

TEST(LepskiBoundTest, InfimumOverCandidates) {
  const LepskiBoundParams p{0.5, 2.0, 0.1, 8.0, 1.0, 200};
  std::vector<BoundCandidate> cands;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10; ++i) {
    const BoundCandidate c{1.0, 0.3 * i, 4.0 / (1 + i), 0.01 * i};
    cands.push_back(c);
    best = std::min(best, LepskiBoundTerm(p, c));
  }
  EXPECT_EQ(LepskiBound(p, cands), best);
  EXPECT_THROW(LepskiBound(p, {}), InputError);
}

// Gaussian-family adaptive bound with u = v, d = 1, J = sigma = C = tau = nu =
// n = 1 and gamma = 1:
//   320 I + 28 r + 302 r/21 + 4 r/1323
//   + (12 + 302/21 + 4/1323)(20 I + 2 r) + 2 e.
TEST(GaussLepskiBoundTest, UnitParameters) {
  const GaussLepskiBoundParams p{1.0, 1.0, 1.0, 1.0, 1, 1.0, 2.0, 2.0, 1};
  const double f = 12.0 + 302.0 / 21.0 + 4.0 / 1323.0;
  for (double r : {0.0, 0.5, 2.0}) {
    for (double i : {0.0, 0.2}) {
      const double expected = 320 * i + 28 * r + 302 * r / 21 + 4 * r / 1323 +
                              f * (20 * i + 2 * r) + 2 * 0.1;
      EXPECT_NEAR(GaussLepskiBoundTerm(p, {1.0, r, i, 0.1}), expected, 1e-10);
    }
  }
  const BoundCandidate a{1.0, 1.0, 0.0, 0.0};
  const BoundCandidate b{4.0, 1.0, 0.0, 0.0};
  EXPECT_NEAR(GaussLepskiBoundTerm(p, b) - 2 * 0.0,
              GaussLepskiBoundTerm(p, {1.0, 0.5, 0.0, 0.0}), 1e-12);
  const std::vector<BoundCandidate> cands{a, b};
  EXPECT_EQ(GaussLepskiBound(p, cands), GaussLepskiBoundTerm(p, b));
}

}  // namespace
}  // namespace lepski
