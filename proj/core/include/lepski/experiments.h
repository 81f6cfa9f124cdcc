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

#ifndef LEPSKI_EXPERIMENTS_H_
#define LEPSKI_EXPERIMENTS_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "Eigen/Core"
#include "lepski/dataset.h"
#include "lepski/estimator.h"
#include "lepski/kernels.h"
#include "lepski/rng.h"
#include "lepski/selection_gauss.h"

namespace lepski {

enum class Design { kUniformCube, kStandardNormal };

// g = sum_j weights_j k_width(centers_j, .) with the scaled Gaussian kernel.
struct RkhsTarget {
  double width = 1.0;
  Points centers;
  Eigen::VectorXd weights;
};

// g(x) = max(0, 1 - slope |x - m|) with m the design centre (0.5 for the
// cube, 0 for the normal design).
struct HatTarget {
  double slope = 1.0;
};

using Target = std::variant<RkhsTarget, HatTarget>;

enum class NoiseKind { kGaussian, kRademacher };

struct Noise {
  NoiseKind kind = NoiseKind::kGaussian;
  double sigma = 0.1;
};

struct ScenarioConfig {
  int n = 200;
  int dim = 1;
  Design design = Design::kUniformCube;
  Target target;
  Noise noise;
  double clip = 2.0;
  int replicates = 100;
  std::uint64_t master_seed = 1;
  int holdout_size = 10000;
};

// n = 200, d = 1, uniform design on [0, 1], g = 2 k_1(0.5, .) so |g|_H = 2,
// Gaussian noise with sigma = 0.1, C = 2.
ScenarioConfig DefaultScenario();

// Throws InputError on invalid fields, including a target whose sup-norm
// bound exceeds the clip bound.
void ValidateScenario(const ScenarioConfig& s);

// (alpha^T K_z alpha)^{1/2} over the centres.
double TargetHNorm(const RkhsTarget& target);
// Upper bound on |g|_inf: sum |alpha_j| width^{-d} or 1 for the hat.
double TargetSupBound(const Target& target);
Eigen::VectorXd EvalTarget(const Target& target, Design design,
                           const Points& x);

Points SampleDesign(Design design, int count, int dim, Rng& rng);

std::uint64_t ReplicateSeed(const ScenarioConfig& s, int n, int replicate);

// X i.i.d. from the design and Y = g(X) + noise; the stream is derived from
// (master_seed, n, replicate) only.
Dataset Generate(const ScenarioConfig& s, int replicate);
Dataset Generate(const ScenarioConfig& s, int n, int replicate);

// Fresh design points and the target values at them.
struct HoldoutSet {
  Points x;
  Eigen::VectorXd g;
};

HoldoutSet DrawHoldout(const ScenarioConfig& s, int count, Rng& rng);

struct HoldoutEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimate of |V h - g|^2_{L2(P)} on a holdout set.
HoldoutEstimate HoldoutSqError(const ConstrainedFit& fit, const Kernel& kernel,
                               const Points& x_train, const HoldoutSet& holdout,
                               ClipBound clip);
HoldoutEstimate HoldoutSqError(const ConstrainedFit& fit, const Kernel& kernel,
                               const Points& x_train, const ScenarioConfig& s,
                               ClipBound clip, int n_test, Rng& rng);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval Wilson95(int successes, int trials);

// Empirical frequency of an event that should hold with probability at least
// `floor`. The check fails only when the whole Wilson interval lies below it.
struct FrequencyReport {
  int successes = 0;
  int trials = 0;
  double frequency = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 1.0;
  double floor = 0.0;
  bool pass = true;
};

FrequencyReport MakeFrequencyReport(int successes, int trials, double floor);

// Target description needed to bound I_inf(g, w, r) from above.
struct TargetNorms {
  double width = 1.0;   // the target lies in H_width
  double h_norm = 0.0;  // |g|_{H_width}
  double sup = 0.0;     // bound on |g|_inf
};

TargetNorms MakeTargetNorms(const ScenarioConfig& s);

// Upper bound on I_inf(g, w, r) for a Gaussian width w: the scaled-target
// bound when w <= norms.width (balls grow as the width shrinks), sup^2
// otherwise.
double IInftyUpper(const TargetNorms& norms, double w, double r);

// Fixed-kernel majorant event: for every grid pair s >= r,
//   |h_r - h_s|^2_{P_n} <= 80 sqrt(k) sigma (r + s) sqrt(t / n) + 40 I(r).
bool FixedMajorantEvent(const std::vector<ConstrainedFit>& fits,
                        const Kernel& kernel, const TargetNorms& norms,
                        double sigma, double t, int n);

// Gaussian-family majorant event: for all eta <= w and s >= r,
//   |h_{w,r} - h_{eta,s}|^2_{P_n}
//     <= 84 J sigma (w^{-d/2} r + eta^{-d/2} s) sqrt(t / n) + 40 I(w, r).
bool GaussMajorantEvent(const FitTable& fits, const std::vector<double>& widths,
                        const std::vector<double>& radii, int dim,
                        const TargetNorms& norms, double j_const, double sigma,
                        double t, int n);

// Bias event with comparator h_r = min(r / |g|_H, 1) g: for every grid r,
//   |h_hat_r - h_r|^2_{P_n} <= c sqrt(k) sigma r sqrt(t / n) + 4 |h_r - g|^2_inf
// with c = 20 for a fixed kernel or 21 J over a family (j_const > 0).
// Requires the fit kernel width <= norms.width.
bool BiasEvent(const std::vector<ConstrainedFit>& fits, const Kernel& kernel,
               const Eigen::VectorXd& g_train, const TargetNorms& norms,
               double sigma, double t, int n, double j_const = 0.0);

enum class Family { kFixed, kGauss };

// Everything a replicate needs besides the scenario.
struct ExperimentConfig {
  Family family = Family::kFixed;
  double kernel_width = 1.0;  // fixed family
  std::vector<double> widths{0.5, 1.0, 2.0};  // Gaussian family
  double j_const = 0.0;  // <= 0: JConstantBound(min width, max width)
  double tau = 0.0;      // <= 0: the theoretical minimum
  double nu = 1.0;
  double grid_a = 1.0;
  double grid_b = 0.25;
  std::vector<double> radii;  // explicit radius grid; empty: (grid_a, grid_b)
  double t = 1.0;
  bool theory_mode = false;
  bool holdout = true;       // adaptive holdout error
  bool grid_holdout = true;  // best-grid holdout error
  bool events = true;
  int threads = 1;
};

// Resolves tau/J defaults against the scenario and kernel.
double ResolvedTau(const ExperimentConfig& cfg, const ScenarioConfig& s);
double ResolvedJ(const ExperimentConfig& cfg);

// One row of the experiment CSV.
struct ReplicateRecord {
  int replicate = 0;
  int n = 0;
  double gamma_hat = 0.0;
  double r_hat = 0.0;
  double err_adaptive = 0.0;
  double err_adaptive_se = 0.0;
  double err_oracle_grid = 0.0;
  int event_bias = 0;
  int event_majorant = 0;
  std::uint64_t seed = 0;
  double seconds = 0.0;
};

ReplicateRecord RunReplicate(const ScenarioConfig& s,
                             const ExperimentConfig& cfg, int n,
                             int replicate);

// s.replicates runs at sample size n on up to cfg.threads workers, merged by
// replicate index.
std::vector<ReplicateRecord> RunReplicates(const ScenarioConfig& s,
                                           const ExperimentConfig& cfg, int n);

struct EventReport {
  FrequencyReport majorant;
  FrequencyReport bias;
  std::vector<ReplicateRecord> records;
};

// Frequencies of the majorant and bias events over s.replicates replicates at
// confidence level cfg.t. RKHS-element targets only.
EventReport EventCheck(const ScenarioConfig& s, const ExperimentConfig& cfg);
FrequencyReport MajorantEventCheck(const ScenarioConfig& s,
                                   const ExperimentConfig& cfg);
FrequencyReport BiasEventCheck(const ScenarioConfig& s,
                               const ExperimentConfig& cfg);

struct RatePoint {
  int n = 0;
  double median_err = 0.0;
  double mean_err = 0.0;
  double median_r_hat = 0.0;
};

struct RateReport {
  std::vector<RatePoint> points;
  double slope = 0.0;  // NaN when degenerate
  double intercept = 0.0;
  bool degenerate = false;
  std::vector<ReplicateRecord> records;
};

// Median adaptive holdout error per n and the least-squares slope of
// log(median) against log(n). Degenerate when some median is <= 1e-12.
RateReport RateExperiment(const ScenarioConfig& s, const ExperimentConfig& cfg,
                          const std::vector<int>& n_list);

struct OracleGapReport {
  std::vector<double> ratios;
  double fraction_within = 0.0;  // share of ratios <= max_ratio
  double max_ratio = 10.0;
  std::vector<ReplicateRecord> records;
};

// Adaptive holdout error over the best grid estimator's holdout error
// (1 when both are <= 1e-12). Needs at least 50 replicates.
OracleGapReport OracleGapCheck(const ScenarioConfig& s,
                               const ExperimentConfig& cfg);

struct TailRow {
  double t = 0.0;
  double frequency = 0.0;  // P(|Z| / a >= t)
  double bound = 0.0;      // 2 e^{-t}
};

struct QuadformReport {
  double scale = 0.0;  // a = 2^{7/2} log 2 sigma^2 |M|_F / log(5/4)
  double mean = 0.0;   // sample mean of exp(|Z| / a)
  double std_error = 0.0;
  bool pass = false;   // mean <= 2 + 3 std_error
  std::vector<TailRow> tails;
};

// Z = eps^T (M - I o M) eps for Gaussian eps with scale sigma.
QuadformReport QuadformTailCheck(const Eigen::MatrixXd& m, double sigma,
                                 const std::vector<double>& t_list,
                                 int replicates, std::uint64_t seed);
// M is the Gram matrix of n uniform points in [0, 1] under k_1.
QuadformReport QuadformTailCheck(int n, double sigma,
                                 const std::vector<double>& t_list,
                                 int replicates, std::uint64_t seed);

}  // namespace lepski

#endif  // LEPSKI_EXPERIMENTS_H_
