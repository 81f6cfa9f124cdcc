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

#ifndef LEPSKI_SELECTION_FIXED_H_
#define LEPSKI_SELECTION_FIXED_H_

#include <span>
#include <string>
#include <vector>

#include "lepski/dataset.h"
#include "lepski/estimator.h"
#include "lepski/kernels.h"

namespace lepski {

// Finite radius grid {b i : 0 <= i < I} U {a sqrt(n)}, I = ceil(a sqrt(n) / b).
struct RadiusGrid {
  double a = 1.0;
  double b = 1.0;
  int n = 1;
  std::vector<double> values;  // ascending, starts at 0, ends at a sqrt(n)
};

RadiusGrid MakeRadiusGrid(double a, double b, int n);

// Explicit ascending list of radii (sorted and deduplicated; must be >= 0).
RadiusGrid RadiusGridFromValues(std::vector<double> values);

// Tuning of the Goldenshluger-Lepski criterion for one kernel.
struct GLConfig {
  double tau = 1.0;
  double nu = 1.0;
  double sigma = 1.0;
  double k_diag = 1.0;
  bool theory_mode = false;
};

// Checks tau, nu > 0. If tau is below 80 sqrt(k_diag) sigma this throws
// ConstraintError in theory mode and otherwise returns a warning.
std::vector<std::string> ValidateGLConfig(const GLConfig& cfg);

double TauMinFixed(double k_diag, double sigma);
// (tau / (80 sqrt(k_diag) sigma))^2, the confidence level t implied by tau.
double TOfTau(double tau, double k_diag, double sigma);

struct CriterionRow {
  double r = 0.0;
  double bias_proxy = 0.0;
  double variance_term = 0.0;
  double total = 0.0;
  int argmax = 0;  // grid index s >= r attaining the bias proxy
};

// For each grid radius r:
//   bias_proxy(r)    = max_{s >= r} |h_r - h_s|^2_{P_n} - tau (r + s) / sqrt(n)
//   variance_term(r) = 2 (1 + nu) tau r / sqrt(n)
// Fits must be ordered by ascending radius and share one training set. The
// comparisons use the unclipped fits.
std::vector<CriterionRow> GLCriterion(std::span<const ConstrainedFit> fits,
                                      const GLConfig& cfg, int n);

// Index of the smallest radius attaining the minimum total.
int ArgminCriterion(std::span<const CriterionRow> rows);

struct SelectionResult {
  double r_hat = 0.0;
  int index = 0;
  std::vector<CriterionRow> criterion;
  std::vector<ConstrainedFit> fits;  // one per grid radius
  ConstrainedFit fit_hat;
  bool clipped = false;
  double rho = 0.0;
  std::vector<std::string> warnings;
};

// cfg.k_diag is replaced by kernel.diag_sup().
SelectionResult SelectRadius(const Dataset& data, const Kernel& kernel,
                             const RadiusGrid& grid, const GLConfig& cfg);

// Same, reusing an eigendecomposition of the training Gram matrix.
SelectionResult SelectRadius(const GramEigen& ge, const std::string& kernel_id,
                             const RadiusGrid& grid, const GLConfig& cfg,
                             bool clipped);

}  // namespace lepski

#endif  // LEPSKI_SELECTION_FIXED_H_
