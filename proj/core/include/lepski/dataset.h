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

#ifndef LEPSKI_DATASET_H_
#define LEPSKI_DATASET_H_

#include <optional>

#include "Eigen/Core"
#include "lepski/kernels.h"

namespace lepski {

// Covariates (n x d) and responses, with the optional clip bound C and noise
// scale sigma that the selection and bound routines need.
struct Dataset {
  Points x;
  Eigen::VectorXd y;
  std::optional<double> clip;
  std::optional<double> sigma;

  int size() const { return static_cast<int>(y.size()); }
  int dim() const { return static_cast<int>(x.cols()); }
};

}  // namespace lepski

#endif  // LEPSKI_DATASET_H_
