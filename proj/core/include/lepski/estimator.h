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

#ifndef LEPSKI_ESTIMATOR_H_
#define LEPSKI_ESTIMATOR_H_

#include <optional>
#include <string>

#include "Eigen/Core"
#include "lepski/kernels.h"

namespace lepski {

// Eigensystem K = A diag(D) A^T of a Gram matrix together with the response
// coordinates c = A^T Y. Eigenvalues are non-increasing and clamped at zero;
// `rank` counts those above `rank_threshold` = max(D) * n * 1e-12.
//
// `rho` is the interpolation radius (sum_{i < rank} c_i^2 / D_i)^{1/2}: the
// constrained fit stops changing once the radius reaches it.
struct GramEigen {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd values;
  Eigen::VectorXd coords;
  int rank = 0;
  double rank_threshold = 0.0;
  double rho = 0.0;

  int size() const { return static_cast<int>(values.size()); }
};

// Throws NumericalError if K is asymmetric or has an eigenvalue below
// -1e-10 times the largest.
GramEigen EigenGram(const Eigen::MatrixXd& k, const Eigen::VectorXd& y);

// Lagrange parameter of the ball constraint at radius r > 0. Zero when
// r >= rho; otherwise the root of
//   phi(mu) = sum_{i < rank} D_i c_i^2 / (D_i + n mu)^2 = r^2,
// found by bisection (phi is strictly decreasing).
double MuOfR(const GramEigen& ge, double r, int n);

// Least-squares fit over the RKHS ball of radius r, restricted to the span of
// the kernel sections at the training points.
struct ConstrainedFit {
  double radius = 0.0;
  double mu = 0.0;
  Eigen::VectorXd coef;
  Eigen::VectorXd train_pred;
  double h_norm = 0.0;
  std::string kernel_id;

  double TrainingLoss(const Eigen::VectorXd& y) const;
};

ConstrainedFit FitConstrained(const GramEigen& ge, double r,
                              std::string kernel_id = {});
ConstrainedFit FitConstrained(const Eigen::MatrixXd& k,
                              const Eigen::VectorXd& y, double r);

// The clipping bound C with |g| <= C; predictions are projected into [-C, C].
class ClipBound {
 public:
  explicit ClipBound(double c);
  double value() const { return c_; }

 private:
  double c_;
};

double Clip(double value, ClipBound bound);

// sum_i a_i k(X_i, x) at every row x of `x_new`, clipped when a bound is
// given.
Eigen::VectorXd Predict(const ConstrainedFit& fit, const Kernel& kernel,
                        const Points& x_train, const Points& x_new,
                        std::optional<ClipBound> clip = std::nullopt);

// (1/n) sum (p_i - q_i)^2, the squared L2(P_n) distance.
double EmpiricalSqDistance(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

// (a - b)^T K (a - b), the squared RKHS distance of two fits on one training
// set.
double RkhsSqDistance(const ConstrainedFit& fit_a, const ConstrainedFit& fit_b,
                      const Eigen::MatrixXd& k);

}  // namespace lepski

#endif  // LEPSKI_ESTIMATOR_H_
