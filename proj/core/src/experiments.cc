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

#include "lepski/experiments.h"

#include <Eigen/QR>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "lepski/errors.h"
#include "lepski/selection_fixed.h"
#include "lepski/theory.h"

namespace lepski {
namespace {

constexpr double kWilsonZ = 1.959963984540054;

const RkhsTarget* AsRkhs(const Target& t) { return std::get_if<RkhsTarget>(&t); }

double Median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// Clipped predictions of every fit at the holdout points, one column per fit.
Eigen::MatrixXd ClippedHoldoutPredictions(
    const std::vector<ConstrainedFit>& fits, const Kernel& kernel,
    const Points& x_train, const HoldoutSet& holdout, double clip) {
  Eigen::MatrixXd coef(x_train.rows(), static_cast<Eigen::Index>(fits.size()));
  for (size_t j = 0; j < fits.size(); ++j) {
    coef.col(static_cast<Eigen::Index>(j)) = fits[j].coef;
  }
  Eigen::MatrixXd pred = CrossGram(kernel, holdout.x, x_train) * coef;
  return pred.cwiseMax(-clip).cwiseMin(clip);
}

HoldoutEstimate SquaredErrorStats(const Eigen::VectorXd& pred,
                                  const Eigen::VectorXd& g) {
  const Eigen::ArrayXd sq = (pred - g).array().square();
  const double count = static_cast<double>(sq.size());
  HoldoutEstimate est;
  est.mean = sq.mean();
  if (sq.size() > 1) {
    const double var = (sq - est.mean).square().sum() / (count - 1.0);
    est.std_error = std::sqrt(var / count);
  }
  return est;
}

Eigen::VectorXd DesignCentre(Design design, int dim) {
  return design == Design::kUniformCube ? Eigen::VectorXd::Constant(dim, 0.5)
                                        : Eigen::VectorXd::Zero(dim);
}

template <typename Fn>
void ParallelFor(int count, int threads, Fn&& fn) {
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

ScenarioConfig DefaultScenario() {
  ScenarioConfig s;
  RkhsTarget target;
  target.width = 1.0;
  target.centers = Points::Constant(1, 1, 0.5);
  target.weights = Eigen::VectorXd::Constant(1, 2.0);
  s.target = target;
  return s;
}

void ValidateScenario(const ScenarioConfig& s) {
  if (s.n < 1) throw InputError("scenario n must be at least 1");
  if (s.dim < 1) throw InputError("scenario dimension must be at least 1");
  if (!(s.noise.sigma >= 0.0) || !std::isfinite(s.noise.sigma)) {
    throw InputError("noise sigma must be finite and non-negative");
  }
  if (!(s.clip > 0.0)) throw InputError("clip bound C must be positive");
  if (s.replicates < 1) throw InputError("replicates must be at least 1");
  if (s.holdout_size < 1) throw InputError("holdout size must be at least 1");
  if (const RkhsTarget* t = AsRkhs(s.target)) {
    if (!(t->width > 0.0)) throw InputError("target width must be positive");
    if (t->centers.rows() < 1 || t->centers.cols() != s.dim ||
        t->weights.size() != t->centers.rows()) {
      throw InputError("target centres and weights are inconsistent");
    }
  } else {
    if (!(std::get<HatTarget>(s.target).slope > 0.0)) {
      throw InputError("hat slope must be positive");
    }
  }
  if (TargetSupBound(s.target) > s.clip * (1.0 + 1e-12)) {
    throw InputError("target sup-norm bound exceeds the clip bound C");
  }
}

double TargetHNorm(const RkhsTarget& target) {
  const Kernel kernel =
      Kernel::Gaussian(target.width, static_cast<int>(target.centers.cols()));
  const Eigen::MatrixXd kz = Gram(kernel, target.centers);
  return std::sqrt(std::max(0.0, target.weights.dot(kz * target.weights)));
}

double TargetSupBound(const Target& target) {
  if (const RkhsTarget* t = AsRkhs(target)) {
    return t->weights.cwiseAbs().sum() *
           std::pow(t->width, -static_cast<double>(t->centers.cols()));
  }
  return 1.0;
}

Eigen::VectorXd EvalTarget(const Target& target, Design design,
                           const Points& x) {
  if (const RkhsTarget* t = AsRkhs(target)) {
    const Kernel kernel =
        Kernel::Gaussian(t->width, static_cast<int>(t->centers.cols()));
    return CrossGram(kernel, x, t->centers) * t->weights;
  }
  const double slope = std::get<HatTarget>(target).slope;
  const Eigen::VectorXd centre =
      DesignCentre(design, static_cast<int>(x.cols()));
  Eigen::VectorXd g(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double dist = (x.row(i).transpose() - centre).norm();
    g[i] = std::max(0.0, 1.0 - slope * dist);
  }
  return g;
}

Points SampleDesign(Design design, int count, int dim, Rng& rng) {
  Points x(count, dim);
  if (design == Design::kUniformCube) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
      for (int j = 0; j < dim; ++j) x(i, j) = unif(rng);
    }
  } else {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
      for (int j = 0; j < dim; ++j) x(i, j) = normal(rng);
    }
  }
  return x;
}

std::uint64_t ReplicateSeed(const ScenarioConfig& s, int n, int replicate) {
  return DeriveSeed(s.master_seed,
                    {kDataStream, static_cast<std::uint64_t>(n),
                     static_cast<std::uint64_t>(replicate)});
}

Dataset Generate(const ScenarioConfig& s, int replicate) {
  return Generate(s, s.n, replicate);
}

Dataset Generate(const ScenarioConfig& s, int n, int replicate) {
  ScenarioConfig sized = s;
  sized.n = n;
  ValidateScenario(sized);
  Rng rng(ReplicateSeed(s, n, replicate));
  Dataset data;
  data.x = SampleDesign(s.design, n, s.dim, rng);
  data.y = EvalTarget(s.target, s.design, data.x);
  const double sigma = s.noise.sigma;
  if (s.noise.kind == NoiseKind::kGaussian) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
      const double z = normal(rng);
      if (sigma > 0.0) data.y[i] += sigma * z;
    }
  } else {
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i) {
      const bool up = coin(rng);
      if (sigma > 0.0) data.y[i] += up ? sigma : -sigma;
    }
  }
  data.clip = s.clip;
  data.sigma = sigma;
  return data;
}

HoldoutSet DrawHoldout(const ScenarioConfig& s, int count, Rng& rng) {
  if (count < 1) throw InputError("holdout size must be at least 1");
  HoldoutSet h;
  h.x = SampleDesign(s.design, count, s.dim, rng);
  h.g = EvalTarget(s.target, s.design, h.x);
  return h;
}

HoldoutEstimate HoldoutSqError(const ConstrainedFit& fit, const Kernel& kernel,
                               const Points& x_train, const HoldoutSet& holdout,
                               ClipBound clip) {
  return SquaredErrorStats(Predict(fit, kernel, x_train, holdout.x, clip),
                           holdout.g);
}

HoldoutEstimate HoldoutSqError(const ConstrainedFit& fit, const Kernel& kernel,
                               const Points& x_train, const ScenarioConfig& s,
                               ClipBound clip, int n_test, Rng& rng) {
  return HoldoutSqError(fit, kernel, x_train, DrawHoldout(s, n_test, rng),
                        clip);
}

WilsonInterval Wilson95(int successes, int trials) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw InputError("Wilson interval needs 0 <= successes <= trials, trials > 0");
  }
  const double n = trials;
  const double p = successes / n;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half =
      kWilsonZ * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

FrequencyReport MakeFrequencyReport(int successes, int trials, double floor) {
  FrequencyReport r;
  r.successes = successes;
  r.trials = trials;
  r.frequency = static_cast<double>(successes) / trials;
  const WilsonInterval w = Wilson95(successes, trials);
  r.wilson_lo = w.lo;
  r.wilson_hi = w.hi;
  r.floor = floor;
  r.pass = w.hi >= floor;
  return r;
}

TargetNorms MakeTargetNorms(const ScenarioConfig& s) {
  const RkhsTarget* t = AsRkhs(s.target);
  if (t == nullptr) {
    throw InputError("event checks need an RKHS-element target");
  }
  TargetNorms norms;
  norms.width = t->width;
  norms.h_norm = TargetHNorm(*t);
  norms.sup = TargetSupBound(s.target);
  return norms;
}

double IInftyUpper(const TargetNorms& norms, double w, double r) {
  if (w <= norms.width * (1.0 + 1e-12) && norms.h_norm > 0.0) {
    return ScaledIInftyUpper(norms.h_norm, norms.sup, r);
  }
  return norms.sup * norms.sup;
}

bool FixedMajorantEvent(const std::vector<ConstrainedFit>& fits,
                        const Kernel& kernel, const TargetNorms& norms,
                        double sigma, double t, int n) {
  const double width = kernel.is_gaussian() ? kernel.width() : 0.0;
  const double coeff =
      80.0 * std::sqrt(kernel.diag_sup()) * sigma * std::sqrt(t / n);
  for (size_t i = 0; i < fits.size(); ++i) {
    const double slack = 40.0 * IInftyUpper(norms, width, fits[i].radius);
    for (size_t j = i + 1; j < fits.size(); ++j) {
      const double lhs =
          EmpiricalSqDistance(fits[i].train_pred, fits[j].train_pred);
      if (lhs > coeff * (fits[i].radius + fits[j].radius) + slack) {
        return false;
      }
    }
  }
  return true;
}

bool GaussMajorantEvent(const FitTable& fits, const std::vector<double>& widths,
                        const std::vector<double>& radii, int dim,
                        const TargetNorms& norms, double j_const, double sigma,
                        double t, int n) {
  const double coeff = 84.0 * j_const * sigma * std::sqrt(t / n);
  const int nw = static_cast<int>(widths.size());
  const int nr = static_cast<int>(radii.size());
  for (int g = 0; g < nw; ++g) {
    const double sg = std::pow(widths[g], -0.5 * dim);
    for (int i = 0; i < nr; ++i) {
      const double slack = 40.0 * IInftyUpper(norms, widths[g], radii[i]);
      for (int h = 0; h <= g; ++h) {
        const double sh = std::pow(widths[h], -0.5 * dim);
        for (int j = i; j < nr; ++j) {
          if (h == g && j == i) continue;
          const double lhs = EmpiricalSqDistance(fits[g][i].train_pred,
                                                 fits[h][j].train_pred);
          if (lhs > coeff * (sg * radii[i] + sh * radii[j]) + slack) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool BiasEvent(const std::vector<ConstrainedFit>& fits, const Kernel& kernel,
               const Eigen::VectorXd& g_train, const TargetNorms& norms,
               double sigma, double t, int n, double j_const) {
  if (!kernel.is_gaussian() || kernel.width() > norms.width * (1.0 + 1e-12)) {
    throw InputError(
        "bias event needs a Gaussian kernel no wider than the target's");
  }
  const double c = j_const > 0.0 ? 21.0 * j_const : 20.0;
  const double coeff =
      c * std::sqrt(kernel.diag_sup()) * sigma * std::sqrt(t / n);
  for (const auto& fit : fits) {
    const double scale =
        norms.h_norm > 0.0 ? std::min(1.0, fit.radius / norms.h_norm) : 1.0;
    const double lhs = EmpiricalSqDistance(fit.train_pred, scale * g_train);
    const double gap = (1.0 - scale) * norms.sup;
    const double slack = 1e-10 * (1.0 + norms.sup * norms.sup);
    if (lhs > coeff * fit.radius + 4.0 * gap * gap + slack) return false;
  }
  return true;
}

double ResolvedTau(const ExperimentConfig& cfg, const ScenarioConfig& s) {
  if (cfg.tau > 0.0) return cfg.tau;
  if (!(s.noise.sigma > 0.0)) {
    throw InputError("tau must be given explicitly when sigma = 0");
  }
  if (cfg.family == Family::kFixed) {
    return TauMinFixed(std::pow(cfg.kernel_width, -static_cast<double>(s.dim)),
                       s.noise.sigma);
  }
  return TauMinGauss(ResolvedJ(cfg), s.noise.sigma);
}

double ResolvedJ(const ExperimentConfig& cfg) {
  if (cfg.j_const > 0.0) return cfg.j_const;
  if (cfg.widths.empty()) throw InputError("width list is empty");
  const auto [lo, hi] = std::minmax_element(cfg.widths.begin(), cfg.widths.end());
  return JConstantBound(*lo, *hi);
}

ReplicateRecord RunReplicate(const ScenarioConfig& s,
                             const ExperimentConfig& cfg, int n,
                             int replicate) {
  const auto start = std::chrono::steady_clock::now();
  ReplicateRecord rec;
  rec.replicate = replicate;
  rec.n = n;
  rec.seed = ReplicateSeed(s, n, replicate);
  rec.event_bias = -1;
  rec.event_majorant = -1;
  rec.err_adaptive = std::numeric_limits<double>::quiet_NaN();
  rec.err_adaptive_se = std::numeric_limits<double>::quiet_NaN();
  rec.err_oracle_grid = std::numeric_limits<double>::quiet_NaN();

  const Dataset data = Generate(s, n, replicate);
  const double tau = ResolvedTau(cfg, s);
  const double sigma = s.noise.sigma;
  const RadiusGrid grid = cfg.radii.empty()
                              ? MakeRadiusGrid(cfg.grid_a, cfg.grid_b, n)
                              : RadiusGridFromValues(cfg.radii);
  const bool rkhs = AsRkhs(s.target) != nullptr;
  const bool events = cfg.events && rkhs && sigma > 0.0;
  const bool events_noiseless = cfg.events && rkhs && sigma == 0.0;
  const TargetNorms norms = rkhs ? MakeTargetNorms(s) : TargetNorms{};
  const Eigen::VectorXd g_train =
      rkhs ? EvalTarget(s.target, s.design, data.x) : Eigen::VectorXd();

  std::optional<HoldoutSet> holdout;
  if (cfg.holdout || cfg.grid_holdout) {
    Rng hrng(DeriveSeed(s.master_seed,
                        {kHoldoutStream, static_cast<std::uint64_t>(n),
                         static_cast<std::uint64_t>(replicate)}));
    holdout = DrawHoldout(s, s.holdout_size, hrng);
  }

  if (cfg.family == Family::kFixed) {
    const Kernel kernel = Kernel::Gaussian(cfg.kernel_width, s.dim);
    GLConfig gl{tau, cfg.nu, sigma > 0.0 ? sigma : 1.0, kernel.diag_sup(),
                cfg.theory_mode && sigma > 0.0};
    const SelectionResult sel = SelectRadius(data, kernel, grid, gl);
    rec.gamma_hat = cfg.kernel_width;
    rec.r_hat = sel.r_hat;
    if (events || events_noiseless) {
      rec.event_majorant =
          FixedMajorantEvent(sel.fits, kernel, norms, sigma, cfg.t, n) ? 1 : 0;
      if (cfg.kernel_width <= norms.width * (1.0 + 1e-12)) {
        rec.event_bias = BiasEvent(sel.fits, kernel, g_train, norms, sigma,
                                   cfg.t, n)
                             ? 1
                             : 0;
      }
    }
    if (holdout) {
      if (cfg.grid_holdout) {
        const Eigen::MatrixXd pred = ClippedHoldoutPredictions(
            sel.fits, kernel, data.x, *holdout, s.clip);
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < pred.cols(); ++j) {
          const HoldoutEstimate e = SquaredErrorStats(pred.col(j), holdout->g);
          best = std::min(best, e.mean);
          if (j == sel.index) {
            rec.err_adaptive = e.mean;
            rec.err_adaptive_se = e.std_error;
          }
        }
        rec.err_oracle_grid = best;
      } else {
        const HoldoutEstimate e = HoldoutSqError(
            sel.fit_hat, kernel, data.x, *holdout, ClipBound(s.clip));
        rec.err_adaptive = e.mean;
        rec.err_adaptive_se = e.std_error;
      }
    }
  } else {
    GaussGLConfig gcfg;
    gcfg.tau = tau;
    gcfg.nu = cfg.nu;
    gcfg.sigma = sigma > 0.0 ? sigma : 1.0;
    gcfg.j_const = ResolvedJ(cfg);
    gcfg.dim = s.dim;
    gcfg.widths = WidthGridFromValues(cfg.widths);
    gcfg.radii = grid;
    gcfg.theory_mode = cfg.theory_mode && sigma > 0.0;
    const GaussSelectionResult sel = SelectWidthRadius(data, gcfg);
    const auto& widths = gcfg.widths.values;
    rec.gamma_hat = sel.gamma_hat;
    rec.r_hat = sel.r_hat;
    if (events || events_noiseless) {
      rec.event_majorant =
          GaussMajorantEvent(sel.fits, widths, grid.values, s.dim, norms,
                             gcfg.j_const, sigma, cfg.t, n)
              ? 1
              : 0;
      bool bias_ok = true;
      bool any = false;
      for (size_t g = 0; g < widths.size(); ++g) {
        if (widths[g] > norms.width * (1.0 + 1e-12)) continue;
        any = true;
        bias_ok = bias_ok && BiasEvent(sel.fits[g],
                                       Kernel::Gaussian(widths[g], s.dim),
                                       g_train, norms, sigma, cfg.t, n,
                                       gcfg.j_const);
      }
      if (any) rec.event_bias = bias_ok ? 1 : 0;
    }
    if (holdout) {
      const GaussCriterionRow& hat = sel.criterion[sel.index];
      double best = std::numeric_limits<double>::infinity();
      for (size_t g = 0; g < widths.size(); ++g) {
        const bool selected = static_cast<int>(g) == hat.width_index;
        if (!cfg.grid_holdout && !selected) continue;
        const Kernel kernel = Kernel::Gaussian(widths[g], s.dim);
        const Eigen::MatrixXd pred = ClippedHoldoutPredictions(
            sel.fits[g], kernel, data.x, *holdout, s.clip);
        for (Eigen::Index j = 0; j < pred.cols(); ++j) {
          const bool is_hat = selected && j == hat.radius_index;
          if (!cfg.grid_holdout && !is_hat) continue;
          const HoldoutEstimate e = SquaredErrorStats(pred.col(j), holdout->g);
          best = std::min(best, e.mean);
          if (is_hat) {
            rec.err_adaptive = e.mean;
            rec.err_adaptive_se = e.std_error;
          }
        }
      }
      if (cfg.grid_holdout) rec.err_oracle_grid = best;
    }
  }
  rec.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rec;
}

std::vector<ReplicateRecord> RunReplicates(const ScenarioConfig& s,
                                           const ExperimentConfig& cfg, int n) {
  ValidateScenario(s);
  std::vector<ReplicateRecord> records(static_cast<size_t>(s.replicates));
  ParallelFor(s.replicates, cfg.threads, [&](int i) {
    records[static_cast<size_t>(i)] = RunReplicate(s, cfg, n, i);
  });
  return records;
}

EventReport EventCheck(const ScenarioConfig& s, const ExperimentConfig& cfg) {
  if (AsRkhs(s.target) == nullptr) {
    throw InputError("event checks need an RKHS-element target");
  }
  if (!(cfg.t >= 1.0)) throw InputError("event checks need t >= 1");
  ExperimentConfig run = cfg;
  run.events = true;
  run.holdout = false;
  run.grid_holdout = false;
  EventReport report;
  report.records = RunReplicates(s, run, s.n);
  int maj = 0;
  int bias = 0;
  int bias_trials = 0;
  for (const auto& r : report.records) {
    maj += r.event_majorant == 1;
    if (r.event_bias >= 0) {
      ++bias_trials;
      bias += r.event_bias;
    }
  }
  const double floor = 1.0 - std::exp(-cfg.t);
  report.majorant = MakeFrequencyReport(
      maj, static_cast<int>(report.records.size()), floor);
  if (bias_trials > 0) {
    report.bias = MakeFrequencyReport(bias, bias_trials, floor);
  } else {
    report.bias = FrequencyReport{};
    report.bias.floor = floor;
  }
  return report;
}

FrequencyReport MajorantEventCheck(const ScenarioConfig& s,
                                   const ExperimentConfig& cfg) {
  return EventCheck(s, cfg).majorant;
}

FrequencyReport BiasEventCheck(const ScenarioConfig& s,
                               const ExperimentConfig& cfg) {
  return EventCheck(s, cfg).bias;
}

RateReport RateExperiment(const ScenarioConfig& s, const ExperimentConfig& cfg,
                          const std::vector<int>& n_list) {
  if (n_list.size() < 4) throw InputError("rate experiment needs >= 4 sizes");
  for (size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) {
      throw InputError("rate experiment sizes must be strictly ascending");
    }
  }
  ExperimentConfig run = cfg;
  run.holdout = true;
  RateReport report;
  for (int n : n_list) {
    std::vector<ReplicateRecord> recs = RunReplicates(s, run, n);
    std::vector<double> errs;
    std::vector<double> radii;
    double sum = 0.0;
    for (const auto& r : recs) {
      errs.push_back(r.err_adaptive);
      radii.push_back(r.r_hat);
      sum += r.err_adaptive;
    }
    report.points.push_back(
        {n, Median(errs), sum / static_cast<double>(errs.size()),
         Median(radii)});
    report.records.insert(report.records.end(), recs.begin(), recs.end());
  }

  for (const auto& p : report.points) {
    if (!(p.median_err > 1e-12)) report.degenerate = true;
  }
  if (report.degenerate) {
    report.slope = std::numeric_limits<double>::quiet_NaN();
    report.intercept = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  const Eigen::Index m = static_cast<Eigen::Index>(report.points.size());
  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd target(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::log(static_cast<double>(report.points[i].n));
    target[i] = std::log(report.points[i].median_err);
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(target);
  report.intercept = coef[0];
  report.slope = coef[1];
  return report;
}

OracleGapReport OracleGapCheck(const ScenarioConfig& s,
                               const ExperimentConfig& cfg) {
  if (s.replicates < 50) {
    throw InputError("oracle gap check needs at least 50 replicates");
  }
  ExperimentConfig run = cfg;
  run.holdout = true;
  run.grid_holdout = true;
  OracleGapReport report;
  report.records = RunReplicates(s, run, s.n);
  int within = 0;
  for (const auto& r : report.records) {
    double ratio;
    if (r.err_adaptive <= 1e-12 && r.err_oracle_grid <= 1e-12) {
      ratio = 1.0;
    } else if (r.err_oracle_grid <= 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    } else {
      ratio = r.err_adaptive / r.err_oracle_grid;
    }
    report.ratios.push_back(ratio);
    within += ratio <= report.max_ratio;
  }
  report.fraction_within =
      static_cast<double>(within) / static_cast<double>(report.ratios.size());
  return report;
}

QuadformReport QuadformTailCheck(const Eigen::MatrixXd& m, double sigma,
                                 const std::vector<double>& t_list,
                                 int replicates, std::uint64_t seed) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw InputError("quadratic form needs a square matrix");
  }
  if (!(sigma >= 0.0)) throw InputError("sigma must be non-negative");
  if (replicates < 2) throw InputError("need at least two replicates");
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd off = m;
  off.diagonal().setZero();

  QuadformReport report;
  report.scale = std::pow(2.0, 3.5) * std::log(2.0) * sigma * sigma *
                 m.norm() / std::log(1.25);

  Rng rng(DeriveSeed(seed, {kDataStream}));
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd eps(n);
  std::vector<int> exceed(t_list.size(), 0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int rep = 0; rep < replicates; ++rep) {
    for (Eigen::Index i = 0; i < n; ++i) eps[i] = sigma * normal(rng);
    const double z = eps.dot(off * eps);
    const double ratio = report.scale > 0.0 ? std::abs(z) / report.scale : 0.0;
    const double v = std::exp(ratio);
    sum += v;
    sum_sq += v * v;
    for (size_t k = 0; k < t_list.size(); ++k) exceed[k] += ratio >= t_list[k];
  }
  const double reps = static_cast<double>(replicates);
  report.mean = sum / reps;
  const double var =
      std::max(0.0, (sum_sq - reps * report.mean * report.mean) / (reps - 1.0));
  report.std_error = std::sqrt(var / reps);
  report.pass = report.mean <= 2.0 + 3.0 * report.std_error;
  for (size_t k = 0; k < t_list.size(); ++k) {
    report.tails.push_back({t_list[k], exceed[k] / reps,
                            std::min(1.0, 2.0 * std::exp(-t_list[k]))});
  }
  return report;
}

QuadformReport QuadformTailCheck(int n, double sigma,
                                 const std::vector<double>& t_list,
                                 int replicates, std::uint64_t seed) {
  if (n < 1) throw InputError("n must be at least 1");
  Rng rng(DeriveSeed(seed, {kMatrixStream}));
  const Points x = SampleDesign(Design::kUniformCube, n, 1, rng);
  return QuadformTailCheck(Gram(Kernel::Gaussian(1.0, 1), x), sigma, t_list,
                           replicates, seed);
}

}  // namespace lepski
