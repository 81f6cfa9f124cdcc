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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "Eigen/Eigenvalues"
#include "lepski/errors.h"

namespace lepski {
namespace {

void CheckWidth(double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw InputError("kernel width must be positive and finite");
  }
}

void CheckInterval(double u, double v) {
  if (!(u > 0.0) || !(v >= u) || !std::isfinite(v)) {
    throw InputError("width interval requires 0 < u <= v < inf");
  }
}

}  // namespace

Kernel Kernel::Gaussian(double width, int dim) {
  CheckWidth(width);
  if (dim < 1) throw InputError("kernel dimension must be at least 1");
  Kernel k;
  k.kind_ = Kind::kGaussian;
  k.width_ = width;
  k.dim_ = dim;
  k.diag_sup_ = std::pow(width, -static_cast<double>(dim));
  return k;
}

Kernel Kernel::Precomputed(Eigen::MatrixXd gram, double diag_sup) {
  if (gram.rows() == 0 || gram.rows() != gram.cols()) {
    throw InputError("precomputed Gram matrix must be square and non-empty");
  }
  if (!(diag_sup > 0.0) || !std::isfinite(diag_sup)) {
    throw InputError("precomputed kernel needs a positive diag_sup");
  }
  const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  const double asym = (gram - gram.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "precomputed Gram matrix is not symmetric (max asymmetry " << asym
        << ")";
    throw InputError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      gram, Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  if (lo < -1e-10 * std::max(hi, 0.0)) {
    std::ostringstream msg;
    msg << "precomputed Gram matrix is not positive semi-definite (eigenvalue "
        << lo << ")";
    throw InputError(msg.str());
  }
  if (gram.diagonal().maxCoeff() > diag_sup * (1.0 + 1e-12)) {
    throw InputError("diag_sup is smaller than a diagonal entry of the Gram");
  }
  Kernel k;
  k.kind_ = Kind::kPrecomputed;
  k.dim_ = 0;
  k.width_ = 0.0;
  k.diag_sup_ = diag_sup;
  k.gram_ = std::move(gram);
  return k;
}

double Kernel::operator()(const Eigen::Ref<const Eigen::VectorXd>& x1,
                          const Eigen::Ref<const Eigen::VectorXd>& x2) const {
  if (!is_gaussian()) {
    throw InputError("a precomputed kernel cannot be evaluated at new points");
  }
  return GaussianEval(width_, dim_, x1, x2);
}

std::string Kernel::Id() const {
  std::ostringstream out;
  out.precision(17);
  if (is_gaussian()) {
    out << "gaussian(width=" << width_ << ",dim=" << dim_ << ")";
  } else {
    out << "precomputed(n=" << gram_.rows() << ",diag_sup=" << diag_sup_
        << ")";
  }
  return out.str();
}

double GaussianEval(double width, int dim,
                    const Eigen::Ref<const Eigen::VectorXd>& x1,
                    const Eigen::Ref<const Eigen::VectorXd>& x2) {
  CheckWidth(width);
  if (x1.size() != dim || x2.size() != dim) {
    throw InputError("point dimension does not match kernel dimension");
  }
  const double sq = (x1 - x2).squaredNorm();
  return std::pow(width, -static_cast<double>(dim)) *
         std::exp(-sq / (width * width));
}

Eigen::MatrixXd Gram(const Kernel& kernel, const Points& x) {
  const Eigen::Index n = x.rows();
  if (n < 1) throw InputError("Gram matrix needs at least one point");
  if (!kernel.is_gaussian()) {
    if (kernel.precomputed_gram().rows() != n) {
      throw InputError("point count does not match the precomputed Gram");
    }
    return kernel.precomputed_gram();
  }
  if (x.cols() != kernel.dim()) {
    throw InputError("point dimension does not match kernel dimension");
  }
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const double v = GaussianEval(kernel.width(), kernel.dim(),
                                    x.row(i).transpose(), x.row(j).transpose());
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

Eigen::MatrixXd CrossGram(const Kernel& kernel, const Points& a,
                          const Points& b) {
  if (!kernel.is_gaussian()) {
    throw InputError("a precomputed kernel cannot be evaluated at new points");
  }
  if (a.cols() != kernel.dim() || b.cols() != kernel.dim()) {
    throw InputError("point dimension does not match kernel dimension");
  }
  const double scale = std::pow(kernel.width(), -static_cast<double>(kernel.dim()));
  const double inv_w2 = 1.0 / (kernel.width() * kernel.width());
  Eigen::MatrixXd k(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      k(i, j) = scale * std::exp(-(a.row(i) - b.row(j)).squaredNorm() * inv_w2);
    }
  }
  return k;
}

double FamilySupDistanceBound(double gamma, double eta) {
  CheckWidth(gamma);
  CheckWidth(eta);
  return std::sqrt(std::abs(gamma * gamma - eta * eta)) / std::max(gamma, eta);
}

double CoveringNumberBound(double a, double u, double v) {
  CheckInterval(u, v);
  if (!(a > 0.0)) throw InputError("covering scale must be positive");
  if (a >= 1.0) return 1.0;
  return std::log(v / u) / (a * a) + 2.0;
}

double EntropyIntegralBound(double u, double v) {
  CheckInterval(u, v);
  return std::log(2.0 + 4.0 * std::log(v / u)) / 2.0 + 1.0;
}

double JConstantBound(double u, double v) {
  CheckInterval(u, v);
  return std::sqrt(81.0 * (std::log(8.0 * std::log(v / u) + 4.0) + 2.0) + 1.0);
}

WidthGrid MakeWidthGrid(double u, double v, double c) {
  CheckInterval(u, v);
  if (!(c > 1.0) || !std::isfinite(c)) {
    throw InputError("width grid ratio c must exceed 1");
  }
  WidthGrid grid{u, v, c, {}};
  const int levels = static_cast<int>(std::ceil(std::log(v / u) / std::log(c)));
  for (int i = 0; i < levels; ++i) {
    const double w = u * std::pow(c, i);
    if (w < v && std::abs(w - v) > 1e-12 * v) grid.values.push_back(w);
  }
  grid.values.push_back(v);
  return grid;
}

WidthGrid WidthGridFromValues(std::vector<double> values) {
  if (values.empty()) throw InputError("width grid must not be empty");
  for (double w : values) CheckWidth(w);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  WidthGrid grid;
  grid.u = values.front();
  grid.v = values.back();
  grid.c = 0.0;
  grid.values = std::move(values);
  return grid;
}

}  // namespace lepski
