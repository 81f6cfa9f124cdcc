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

#ifndef LEPSKI_KERNELS_H_
#define LEPSKI_KERNELS_H_

#include <string>
#include <vector>

#include "Eigen/Core"

namespace lepski {

// Covariates, one point per row.
using Points = Eigen::MatrixXd;

// A bounded kernel: either the scaled Gaussian
//   k_w(x1, x2) = w^-d exp(-|x1 - x2|^2 / w^2)
// or a precomputed Gram matrix over a fixed training set. The precomputed
// kind carries sup_x k(x, x) explicitly since it cannot be recovered from a
// finite matrix.
class Kernel {
 public:
  enum class Kind { kGaussian, kPrecomputed };

  static Kernel Gaussian(double width, int dim);
  // Throws InputError unless `gram` is symmetric (1e-12 relative) and has no
  // eigenvalue below -1e-10 times the largest.
  static Kernel Precomputed(Eigen::MatrixXd gram, double diag_sup);

  Kind kind() const { return kind_; }
  bool is_gaussian() const { return kind_ == Kind::kGaussian; }
  double width() const { return width_; }
  int dim() const { return dim_; }
  double diag_sup() const { return diag_sup_; }
  const Eigen::MatrixXd& precomputed_gram() const { return gram_; }

  // Gaussian kind only.
  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x1,
                    const Eigen::Ref<const Eigen::VectorXd>& x2) const;

  // Short stable description, used to tag fits with the kernel they came from.
  std::string Id() const;

 private:
  Kernel() = default;

  Kind kind_ = Kind::kGaussian;
  double width_ = 1.0;
  int dim_ = 1;
  double diag_sup_ = 1.0;
  Eigen::MatrixXd gram_;
};

double GaussianEval(double width, int dim,
                    const Eigen::Ref<const Eigen::VectorXd>& x1,
                    const Eigen::Ref<const Eigen::VectorXd>& x2);

// K_ij = k(X_i, X_j). For a precomputed kernel X only fixes n.
Eigen::MatrixXd Gram(const Kernel& kernel, const Points& x);

// K_ij = k(A_i, B_j); Gaussian kernels only.
Eigen::MatrixXd CrossGram(const Kernel& kernel, const Points& a,
                          const Points& b);

// Sup-distance between the unscaled exponentials f_gamma and f_eta:
// sqrt|gamma^2 - eta^2| / max(gamma, eta).
double FamilySupDistanceBound(double gamma, double eta);

// Covering number of the unscaled family over widths in [u, v] at scale a.
double CoveringNumberBound(double a, double u, double v);

// Bound on the entropy integral over [0, 1/2] of log N(a).
double EntropyIntegralBound(double u, double v);

// Upper bound on the chaining constant J for widths in [u, v].
double JConstantBound(double u, double v);

// Geometric width grid {u c^i : 0 <= i < L} U {v}, L = ceil(log(v/u)/log c).
struct WidthGrid {
  double u = 1.0;
  double v = 1.0;
  double c = 2.0;
  std::vector<double> values;  // ascending, deduplicated
};

WidthGrid MakeWidthGrid(double u, double v, double c);

// Wraps an explicit list of widths (ascending after sorting, duplicates
// removed) so callers can run the Gaussian selection on arbitrary grids.
WidthGrid WidthGridFromValues(std::vector<double> values);

}  // namespace lepski

#endif  // LEPSKI_KERNELS_H_
