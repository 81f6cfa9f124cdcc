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

#ifndef LEPSKI_SELECTION_GAUSS_H_
#define LEPSKI_SELECTION_GAUSS_H_

#include <string>
#include <vector>

#include "lepski/dataset.h"
#include "lepski/estimator.h"
#include "lepski/kernels.h"
#include "lepski/selection_fixed.h"

namespace lepski {

// Two-parameter selection over Gaussian widths and radii. Penalties carry the
// factor w^{-d/2} = ||k_w||_diag^{1/2}.
struct GaussGLConfig {
  double tau = 1.0;
  double nu = 1.0;
  double sigma = 1.0;
  double j_const = 0.0;  // <= 0 means JConstantBound(u, v)
  int dim = 1;
  WidthGrid widths;
  RadiusGrid radii;
  bool theory_mode = false;

  double J() const;
};

double TauMinGauss(double j_const, double sigma);
double TOfTauGauss(double tau, double j_const, double sigma);

// Throws InputError for invalid tuning. If tau < 84 J sigma: ConstraintError in
// theory mode, otherwise a returned warning.
std::vector<std::string> ValidateGaussGLConfig(const GaussGLConfig& cfg);

// fits[g][i]: width index g (ascending), radius index i (ascending).
using FitTable = std::vector<std::vector<ConstrainedFit>>;

struct GaussCriterionRow {
  double gamma = 0.0;
  double r = 0.0;
  int width_index = 0;
  int radius_index = 0;
  double bias_proxy = 0.0;
  double variance_term = 0.0;
  double total = 0.0;
  // (eta, s) attaining the bias proxy; always eta <= gamma and s >= r.
  int argmax_width = 0;
  int argmax_radius = 0;
};

// Row-major over (width, radius):
//   bias_proxy(w, r) = max_{eta <= w, s >= r} |h_{w,r} - h_{eta,s}|^2_{P_n}
//                        - tau (w^{-d/2} r + eta^{-d/2} s) / sqrt(n)
//   variance_term    = 2 (1 + nu) tau w^{-d/2} r / sqrt(n)
std::vector<GaussCriterionRow> GaussGLCriterion(const FitTable& fits,
                                                const GaussGLConfig& cfg,
                                                int n);

// Tie-break: largest width first, then smallest radius.
int ArgminGaussCriterion(const std::vector<GaussCriterionRow>& rows);

struct GaussSelectionResult {
  double gamma_hat = 0.0;
  double r_hat = 0.0;
  int index = 0;  // into criterion
  std::vector<GaussCriterionRow> criterion;
  FitTable fits;
  ConstrainedFit fit_hat;
  bool clipped = false;
  std::vector<std::string> warnings;
};

GaussSelectionResult SelectWidthRadius(const Dataset& data,
                                       const GaussGLConfig& cfg);

}  // namespace lepski

#endif  // LEPSKI_SELECTION_GAUSS_H_
