// Copyright 2026 The mcm-lab Authors
//
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

#ifndef MCMLAB_CORE_ERRORS_HPP_
#define MCMLAB_CORE_ERRORS_HPP_

#include <stdexcept>

namespace mcmlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range configuration input. CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An operation was called with arguments that violate its preconditions.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Numerical pathology: non-physical maps, log branch failures, degenerate fits.
// CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mcmlab

#endif  // MCMLAB_CORE_ERRORS_HPP_
