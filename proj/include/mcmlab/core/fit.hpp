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

#ifndef MCMLAB_CORE_FIT_HPP_
#define MCMLAB_CORE_FIT_HPP_

#include <span>
#include <vector>

namespace mcmlab::core {

// y = offset + amplitude * cos(phi - phase), fitted linearly as
// a cos(phi) + b sin(phi) + c.
struct CosineFit {
  double amplitude = 0.0;
  double phase = 0.0;
  double offset = 0.0;
  double rms_residual = 0.0;
};

// Requires at least three points and non-degenerate phases.
CosineFit fit_cosine(std::span<const double> phis, std::span<const double> values);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

LinearFit fit_linear(std::span<const double> xs, std::span<const double> ys);

// Least-squares polynomial coefficients c_0 .. c_degree.
std::vector<double> fit_polynomial(std::span<const double> xs,
                                   std::span<const double> ys, int degree);

// Removes 2 pi jumps between consecutive samples.
std::vector<double> unwrap(std::span<const double> phases);

}  // namespace mcmlab::core

#endif  // MCMLAB_CORE_FIT_HPP_
