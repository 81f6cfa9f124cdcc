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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lepski/errors.h"

namespace lepski {

RadiusGrid MakeRadiusGrid(double a, double b, int n) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InputError("radius grid needs a > 0 and b > 0");
  }
  if (n < 1) throw InputError("radius grid needs n >= 1");
  const double top = a * std::sqrt(static_cast<double>(n));
  const auto count = static_cast<long long>(std::ceil(top / b));
  RadiusGrid grid{a, b, n, {}};
  grid.values.reserve(static_cast<size_t>(count) + 1);
  for (long long i = 0; i < count; ++i) {
    const double r = b * static_cast<double>(i);
    if (r < top && top - r > 1e-12 * top) grid.values.push_back(r);
  }
  grid.values.push_back(top);
  return grid;
}

RadiusGrid RadiusGridFromValues(std::vector<double> values) {
  if (values.empty()) throw InputError("radius grid must not be empty");
  for (double r : values) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw InputError("radii must be finite and non-negative");
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  RadiusGrid grid;
  grid.a = 0.0;
  grid.b = 0.0;
  grid.n = 0;
  grid.values = std::move(values);
  return grid;
}

double TauMinFixed(double k_diag, double sigma) {
  if (!(k_diag > 0.0) || !(sigma > 0.0)) {
    throw InputError("tau_min needs positive k_diag and sigma");
  }
  return 80.0 * std::sqrt(k_diag) * sigma;
}

double TOfTau(double tau, double k_diag, double sigma) {
  if (!(tau > 0.0)) throw InputError("tau must be positive");
  const double ratio = tau / TauMinFixed(k_diag, sigma);
  return ratio * ratio;
}

std::vector<std::string> ValidateGLConfig(const GLConfig& cfg) {
  if (!(cfg.tau > 0.0) || !std::isfinite(cfg.tau)) {
    throw InputError("tau must be positive and finite");
  }
  if (!(cfg.nu > 0.0) || !std::isfinite(cfg.nu)) {
    throw InputError("nu must be positive and finite");
  }
  std::vector<std::string> warnings;
  const double tau_min = TauMinFixed(cfg.k_diag, cfg.sigma);
  if (cfg.tau < tau_min) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "tau = " << cfg.tau << " is below 80 sqrt(k_diag) sigma = "
        << tau_min << "; the high-probability guarantee does not apply";
    if (cfg.theory_mode) throw ConstraintError(msg.str());
    warnings.push_back(msg.str());
  }
  return warnings;
}

std::vector<CriterionRow> GLCriterion(std::span<const ConstrainedFit> fits,
                                      const GLConfig& cfg, int n) {
  if (fits.empty()) throw InputError("criterion needs a non-empty grid");
  if (n < 1) throw InputError("sample size must be positive");
  const size_t count = fits.size();
  for (size_t i = 0; i < count; ++i) {
    if (fits[i].train_pred.size() != n) {
      throw InputError("fit predictions do not match the sample size");
    }
    if (i > 0 && !(fits[i].radius > fits[i - 1].radius)) {
      throw InputError("fits must be ordered by strictly ascending radius");
    }
  }

  // Pairwise distances for s >= r only.
  std::vector<double> dist(count * count, 0.0);
  for (size_t i = 0; i < count; ++i) {
    for (size_t j = i + 1; j < count; ++j) {
      dist[i * count + j] =
          EmpiricalSqDistance(fits[i].train_pred, fits[j].train_pred);
    }
  }

  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<CriterionRow> rows(count);
  for (size_t i = 0; i < count; ++i) {
    const double r = fits[i].radius;
    double best = -std::numeric_limits<double>::infinity();
    int arg = static_cast<int>(i);
    for (size_t j = i; j < count; ++j) {
      const double value =
          dist[i * count + j] - cfg.tau * (r + fits[j].radius) / root_n;
      if (value > best) {
        best = value;
        arg = static_cast<int>(j);
      }
    }
    CriterionRow& row = rows[i];
    row.r = r;
    row.bias_proxy = best;
    row.variance_term = 2.0 * (1.0 + cfg.nu) * cfg.tau * r / root_n;
    row.total = row.bias_proxy + row.variance_term;
    row.argmax = arg;
  }
  return rows;
}

int ArgminCriterion(std::span<const CriterionRow> rows) {
  if (rows.empty()) throw InputError("criterion table is empty");
  int best = 0;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].total < rows[best].total) best = static_cast<int>(i);
  }
  return best;
}

SelectionResult SelectRadius(const GramEigen& ge, const std::string& kernel_id,
                             const RadiusGrid& grid, const GLConfig& cfg,
                             bool clipped) {
  if (grid.values.empty()) throw InputError("radius grid must not be empty");
  SelectionResult result;
  result.warnings = ValidateGLConfig(cfg);
  result.fits.reserve(grid.values.size());
  for (double r : grid.values) {
    result.fits.push_back(FitConstrained(ge, r, kernel_id));
  }
  result.criterion = GLCriterion(result.fits, cfg, ge.size());
  result.index = ArgminCriterion(result.criterion);
  result.r_hat = grid.values[result.index];
  result.fit_hat = result.fits[result.index];
  result.clipped = clipped;
  result.rho = ge.rho;
  return result;
}

SelectionResult SelectRadius(const Dataset& data, const Kernel& kernel,
                             const RadiusGrid& grid, const GLConfig& cfg) {
  if (data.size() < 1) throw InputError("dataset is empty");
  GLConfig tuned = cfg;
  tuned.k_diag = kernel.diag_sup();
  const GramEigen ge = EigenGram(Gram(kernel, data.x), data.y);
  return SelectRadius(ge, kernel.Id(), grid, tuned, data.clip.has_value());
}

}  // namespace lepski
