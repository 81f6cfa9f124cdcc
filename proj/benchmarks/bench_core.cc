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

#include <benchmark/benchmark.h>

#include <cmath>

#include "lepski/estimator.h"
#include "lepski/experiments.h"
#include "lepski/kernels.h"
#include "lepski/selection_fixed.h"
#include "lepski/selection_gauss.h"

namespace lepski {
namespace {

Dataset Data(int n) { return Generate(DefaultScenario(), n, 0); }

void BM_EigenGram(benchmark::State& state) {
  const Dataset data = Data(static_cast<int>(state.range(0)));
  const Eigen::MatrixXd k = Gram(Kernel::Gaussian(1.0, 1), data.x);
  for (auto _ : state) benchmark::DoNotOptimize(EigenGram(k, data.y));
}
BENCHMARK(BM_EigenGram)->RangeMultiplier(2)->Range(50, 800);

void BM_FitConstrained(benchmark::State& state) {
  const Dataset data = Data(static_cast<int>(state.range(0)));
  const GramEigen ge = EigenGram(Gram(Kernel::Gaussian(1.0, 1), data.x), data.y);
  for (auto _ : state) benchmark::DoNotOptimize(FitConstrained(ge, 1.5));
}
BENCHMARK(BM_FitConstrained)->RangeMultiplier(2)->Range(50, 800);

void BM_SelectRadius(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Dataset data = Data(n);
  const RadiusGrid grid = MakeRadiusGrid(1.0, 0.25, n);
  GLConfig cfg;
  cfg.tau = TauMinFixed(1.0, 0.1);
  cfg.sigma = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SelectRadius(data, Kernel::Gaussian(1.0, 1), grid, cfg));
  }
}
BENCHMARK(BM_SelectRadius)->RangeMultiplier(2)->Range(50, 800);

void BM_SelectWidthRadius(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Dataset data = Data(n);
  GaussGLConfig cfg;
  cfg.sigma = 0.1;
  cfg.widths = WidthGridFromValues({0.5, 1.0, 2.0});
  cfg.radii = MakeRadiusGrid(1.0, 0.25, n);
  cfg.tau = TauMinGauss(cfg.J(), cfg.sigma);
  for (auto _ : state) benchmark::DoNotOptimize(SelectWidthRadius(data, cfg));
}
BENCHMARK(BM_SelectWidthRadius)->RangeMultiplier(2)->Range(50, 400);

}  // namespace
}  // namespace lepski

BENCHMARK_MAIN();
