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

#include "lepski/selection_gauss.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lepski/errors.h"

namespace lepski {

double GaussGLConfig::J() const {
  if (j_const > 0.0) return j_const;
  return JConstantBound(widths.u, widths.v);
}

double TauMinGauss(double j_const, double sigma) {
  if (!(j_const > 0.0) || !(sigma > 0.0)) {
    throw InputError("tau_min needs positive J and sigma");
  }
  return 84.0 * j_const * sigma;
}

double TOfTauGauss(double tau, double j_const, double sigma) {
  if (!(tau > 0.0)) throw InputError("tau must be positive");
  const double ratio = tau / TauMinGauss(j_const, sigma);
  return ratio * ratio;
}

std::vector<std::string> ValidateGaussGLConfig(const GaussGLConfig& cfg) {
  if (!(cfg.tau > 0.0) || !std::isfinite(cfg.tau)) {
    throw InputError("tau must be positive and finite");
  }
  if (!(cfg.nu > 0.0) || !std::isfinite(cfg.nu)) {
    throw InputError("nu must be positive and finite");
  }
  if (cfg.dim < 1) throw InputError("dimension must be at least 1");
  if (cfg.widths.values.empty() || cfg.radii.values.empty()) {
    throw InputError("width and radius grids must be non-empty");
  }
  std::vector<std::string> warnings;
  const double tau_min = TauMinGauss(cfg.J(), cfg.sigma);
  if (cfg.tau < tau_min) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "tau = " << cfg.tau << " is below 84 J sigma = " << tau_min
        << "; the high-probability guarantee does not apply";
    if (cfg.theory_mode) throw ConstraintError(msg.str());
    warnings.push_back(msg.str());
  }
  return warnings;
}

std::vector<GaussCriterionRow> GaussGLCriterion(const FitTable& fits,
                                                const GaussGLConfig& cfg,
                                                int n) {
  const auto& widths = cfg.widths.values;
  const auto& radii = cfg.radii.values;
  if (widths.empty() || radii.empty()) {
    throw InputError("criterion needs non-empty width and radius grids");
  }
  if (n < 1) throw InputError("sample size must be positive");
  if (fits.size() != widths.size()) {
    throw InputError("fit table does not match the width grid");
  }
  for (const auto& column : fits) {
    if (column.size() != radii.size()) {
      throw InputError("fit table does not match the radius grid");
    }
    for (const auto& fit : column) {
      if (fit.train_pred.size() != n) {
        throw InputError("fit predictions do not match the sample size");
      }
    }
  }

  const int nw = static_cast<int>(widths.size());
  const int nr = static_cast<int>(radii.size());
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> scale(nw);
  for (int g = 0; g < nw; ++g) {
    scale[g] = std::pow(widths[g], -0.5 * cfg.dim);
  }

  std::vector<GaussCriterionRow> rows;
  rows.reserve(static_cast<size_t>(nw) * nr);
  for (int g = 0; g < nw; ++g) {
    for (int i = 0; i < nr; ++i) {
      const ConstrainedFit& self = fits[g][i];
      const double r = radii[i];
      double best = -std::numeric_limits<double>::infinity();
      int arg_w = g;
      int arg_r = i;
      for (int h = 0; h <= g; ++h) {
        for (int j = i; j < nr; ++j) {
          const double d = (h == g && j == i)
                               ? 0.0
                               : EmpiricalSqDistance(self.train_pred,
                                                     fits[h][j].train_pred);
          const double value =
              d - cfg.tau * (scale[g] * r + scale[h] * radii[j]) / root_n;
          if (value > best) {
            best = value;
            arg_w = h;
            arg_r = j;
          }
        }
      }
      GaussCriterionRow row;
      row.gamma = widths[g];
      row.r = r;
      row.width_index = g;
      row.radius_index = i;
      row.bias_proxy = best;
      row.variance_term = 2.0 * (1.0 + cfg.nu) * cfg.tau * scale[g] * r / root_n;
      row.total = row.bias_proxy + row.variance_term;
      row.argmax_width = arg_w;
      row.argmax_radius = arg_r;
      rows.push_back(row);
    }
  }
  return rows;
}

int ArgminGaussCriterion(const std::vector<GaussCriterionRow>& rows) {
  if (rows.empty()) throw InputError("criterion table is empty");
  // Rows are width-major ascending; scan widths descending, radii ascending,
  // and only move on a strict improvement.
  int nw = 0;
  for (const auto& row : rows) nw = std::max(nw, row.width_index + 1);
  const int nr = static_cast<int>(rows.size()) / nw;
  int best = (nw - 1) * nr;
  for (int g = nw - 1; g >= 0; --g) {
    for (int i = 0; i < nr; ++i) {
      const int idx = g * nr + i;
      if (rows[idx].total < rows[best].total) best = idx;
    }
  }
  return best;
}

GaussSelectionResult SelectWidthRadius(const Dataset& data,
                                       const GaussGLConfig& cfg) {
  if (data.size() < 1) throw InputError("dataset is empty");
  if (data.dim() != cfg.dim) {
    throw InputError("dataset dimension does not match the configuration");
  }
  GaussSelectionResult result;
  result.warnings = ValidateGaussGLConfig(cfg);
  result.fits.reserve(cfg.widths.values.size());
  for (double w : cfg.widths.values) {
    const Kernel kernel = Kernel::Gaussian(w, cfg.dim);
    const GramEigen ge = EigenGram(Gram(kernel, data.x), data.y);
    const std::string id = kernel.Id();
    std::vector<ConstrainedFit> column;
    column.reserve(cfg.radii.values.size());
    for (double r : cfg.radii.values) {
      column.push_back(FitConstrained(ge, r, id));
    }
    result.fits.push_back(std::move(column));
  }
  result.criterion = GaussGLCriterion(result.fits, cfg, data.size());
  result.index = ArgminGaussCriterion(result.criterion);
  const GaussCriterionRow& row = result.criterion[result.index];
  result.gamma_hat = row.gamma;
  result.r_hat = row.r;
  result.fit_hat = result.fits[row.width_index][row.radius_index];
  result.clipped = data.clip.has_value();
  return result;
}

}  // namespace lepski
