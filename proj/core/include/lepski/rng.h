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

#ifndef LEPSKI_RNG_H_
#define LEPSKI_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace lepski {

using Rng = std::mt19937_64;

// Deterministic 64-bit seed for the stream identified by `path` under
// `master`. Derivation goes through std::seed_seq, so it depends only on the
// inputs and never on evaluation order.
std::uint64_t DeriveSeed(std::uint64_t master,
                         std::initializer_list<std::uint64_t> path);

// Stream tags, kept distinct so data and holdout draws never overlap.
inline constexpr std::uint64_t kDataStream = 0x64617461;     // "data"
inline constexpr std::uint64_t kHoldoutStream = 0x686f6c64;  // "hold"
inline constexpr std::uint64_t kMatrixStream = 0x6d617472;   // "matr"

}  // namespace lepski

#endif  // LEPSKI_RNG_H_
