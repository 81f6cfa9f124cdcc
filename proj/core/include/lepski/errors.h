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

#ifndef LEPSKI_ERRORS_H_
#define LEPSKI_ERRORS_H_

#include <stdexcept>
#include <string>

namespace lepski {

// Base of every error thrown by the library. The three subclasses map onto
// the command-line exit codes 2, 3 and 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain arguments: dimension mismatches, non-positive
// widths, invalid grids.
class InputError : public Error {
 public:
  using Error::Error;
};

// A theoretical precondition was violated while theory mode was requested,
// e.g. a tuning parameter below the minimum a guarantee needs.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

// A numerical routine failed: an indefinite Gram matrix, a root solve that
// did not converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lepski

#endif  // LEPSKI_ERRORS_H_
