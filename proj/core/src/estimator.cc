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

#include "lepski/estimator.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "Eigen/Eigenvalues"
#include "lepski/errors.h"

namespace lepski {
namespace {

constexpr int kMaxDoublings = 200;
constexpr int kMaxBisections = 200;

// phi(mu) = sum_{i < rank} D_i c_i^2 / (D_i + n mu)^2.
double Phi(const GramEigen& ge, double mu, int n) {
  double sum = 0.0;
  for (int i = 0; i < ge.rank; ++i) {
    const double denom = ge.values[i] + n * mu;
    sum += ge.values[i] * ge.coords[i] * ge.coords[i] / (denom * denom);
  }
  return sum;
}

}  // namespace

GramEigen EigenGram(const Eigen::MatrixXd& k, const Eigen::VectorXd& y) {
  const Eigen::Index n = k.rows();
  if (n < 1 || k.cols() != n) {
    throw InputError("Gram matrix must be square and non-empty");
  }
  if (y.size() != n) {
    throw InputError("response length does not match the Gram matrix");
  }
  const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
  const double asym = (k - k.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "Gram matrix is not symmetric (max asymmetry " << asym << ")";
    throw NumericalError(msg.str());
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver failed on the Gram matrix");
  }
  // Eigen returns ascending eigenvalues; flip to non-increasing.
  GramEigen ge;
  ge.values = solver.eigenvalues().reverse();
  ge.vectors = solver.eigenvectors().rowwise().reverse();

  const double largest = std::max(ge.values[0], 0.0);
  const double smallest = ge.values[n - 1];
  if (smallest < -1e-10 * largest) {
    std::ostringstream msg;
    msg << "Gram matrix is not positive semi-definite (eigenvalue " << smallest
        << ", largest " << largest << ")";
    throw NumericalError(msg.str());
  }
  ge.values = ge.values.cwiseMax(0.0);
  ge.coords = ge.vectors.transpose() * y;
  ge.rank_threshold = largest * static_cast<double>(n) * 1e-12;

  double rho_sq = 0.0;
  int rank = 0;
  if (largest > 0.0) {
    while (rank < n && ge.values[rank] > ge.rank_threshold) {
      rho_sq += ge.coords[rank] * ge.coords[rank] / ge.values[rank];
      ++rank;
    }
  }
  ge.rank = rank;
  ge.rho = std::sqrt(rho_sq);
  return ge;
}

double MuOfR(const GramEigen& ge, double r, int n) {
  if (!(r > 0.0)) throw InputError("mu(r) needs a positive radius");
  if (n < 1) throw InputError("sample size must be positive");
  if (r >= ge.rho) return 0.0;

  const double target = r * r;
  const double tol = 1e-10 * target;

  double hi = 1.0;
  int doublings = 0;
  for (double f = Phi(ge, hi, n); f >= target; f = Phi(ge, hi, n)) {
    if (f - target <= tol) return hi;
    if (++doublings > kMaxDoublings) {
      throw NumericalError("mu(r): failed to bracket the root");
    }
    hi *= 2.0;
  }

  // phi(lo) > target > phi(hi). While lo is still 0 the midpoint halves hi;
  // afterwards it is geometric so tiny roots are resolved to relative
  // accuracy.
  double lo = 0.0;
  for (int it = 0; it < kMaxDoublings + kMaxBisections; ++it) {
    const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
    const double f = Phi(ge, mid, n);
    if (std::abs(f - target) <= tol) return mid;
    if (f > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (lo > 0.0 && hi - lo <= 1e-14 * hi) return hi;
  }
  throw NumericalError("mu(r): bisection did not converge");
}

double ConstrainedFit::TrainingLoss(const Eigen::VectorXd& y) const {
  return EmpiricalSqDistance(train_pred, y);
}

ConstrainedFit FitConstrained(const GramEigen& ge, double r,
                              std::string kernel_id) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw InputError("radius must be finite and non-negative");
  }
  const int n = ge.size();
  ConstrainedFit fit;
  fit.radius = r;
  fit.kernel_id = std::move(kernel_id);
  fit.coef = Eigen::VectorXd::Zero(n);
  fit.train_pred = Eigen::VectorXd::Zero(n);
  if (r == 0.0 || ge.rank == 0) return fit;

  fit.mu = MuOfR(ge, r, n);
  const int m = ge.rank;
  const Eigen::VectorXd d = ge.values.head(m);
  const Eigen::VectorXd w =
      ge.coords.head(m).cwiseQuotient((d.array() + n * fit.mu).matrix());
  const auto basis = ge.vectors.leftCols(m);
  fit.coef = basis * w;
  fit.train_pred = basis * d.cwiseProduct(w);
  fit.h_norm = std::sqrt(d.dot(w.cwiseProduct(w)));
  return fit;
}

ConstrainedFit FitConstrained(const Eigen::MatrixXd& k,
                              const Eigen::VectorXd& y, double r) {
  return FitConstrained(EigenGram(k, y), r);
}

ClipBound::ClipBound(double c) : c_(c) {
  if (!(c > 0.0)) throw InputError("clip bound C must be positive");
}

double Clip(double value, ClipBound bound) {
  return std::min(std::max(value, -bound.value()), bound.value());
}

Eigen::VectorXd Predict(const ConstrainedFit& fit, const Kernel& kernel,
                        const Points& x_train, const Points& x_new,
                        std::optional<ClipBound> clip) {
  if (fit.coef.size() != x_train.rows()) {
    throw InputError("fit coefficients do not match the training points");
  }
  Eigen::VectorXd out = CrossGram(kernel, x_new, x_train) * fit.coef;
  if (clip) {
    for (double& v : out) v = Clip(v, *clip);
  }
  return out;
}

double EmpiricalSqDistance(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size() || p.size() == 0) {
    throw InputError("empirical distance needs two vectors of equal length");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double diff = p[i] - q[i];
    sum += diff * diff;
  }
  return sum / static_cast<double>(p.size());
}

double RkhsSqDistance(const ConstrainedFit& fit_a, const ConstrainedFit& fit_b,
                      const Eigen::MatrixXd& k) {
  if (fit_a.coef.size() != k.rows() || fit_b.coef.size() != k.rows() ||
      k.rows() != k.cols()) {
    throw InputError("fits and Gram matrix have mismatched sizes");
  }
  if (!fit_a.kernel_id.empty() && !fit_b.kernel_id.empty() &&
      fit_a.kernel_id != fit_b.kernel_id) {
    throw InputError("fits come from different kernels");
  }
  const Eigen::VectorXd diff = fit_a.coef - fit_b.coef;
  return diff.dot(k * diff);
}

}  // namespace lepski
