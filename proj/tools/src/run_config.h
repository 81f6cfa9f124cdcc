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

#ifndef LEPSKI_TOOLS_RUN_CONFIG_H_
#define LEPSKI_TOOLS_RUN_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "lepski/experiments.h"

namespace lepski::cli {

// Inputs of the `bounds` subcommand: bound curves over a radius range and the
// rate envelope over a list of sample sizes.
struct BoundsConfig {
  double r_min = 0.0;
  double r_max = 4.0;
  int r_steps = 17;
  int n = 200;
  double t = 1.0;
  double k_diag = 1.0;
  double j_const = 0.0;  // <= 0: JConstantBound over the width list
  double i_inf = 0.0;    // constant I_inf(g, r) upper bound used in every row
  double d1 = 1.0;
  double d2 = 1.0;
  double d3 = 1.0;
  double beta = 0.5;
  std::vector<int> n_list{50, 100, 200, 400, 800, 1600};
};

struct RunConfig {
  std::uint64_t seed = 1;
  int threads = 1;
  bool theory_mode = false;
  ScenarioConfig scenario;
  ExperimentConfig experiment;
  double fit_radius = 1.0;
  std::vector<int> n_list{50, 100, 200, 400, 800};
  BoundsConfig bounds;
};

RunConfig DefaultRunConfig();

// Parses YAML (or JSON, which is a subset) on top of the defaults. Unknown keys
// and ill-typed values raise InputError; the result is validated.
RunConfig ParseRunConfig(const std::string& text);
RunConfig LoadRunConfig(const std::string& path);

void ValidateRunConfig(const RunConfig& cfg);

// YAML rendering that ParseRunConfig reads back unchanged.
std::string RenderRunConfig(const RunConfig& cfg);

}  // namespace lepski::cli

#endif  // LEPSKI_TOOLS_RUN_CONFIG_H_
