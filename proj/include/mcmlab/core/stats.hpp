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

#ifndef MCMLAB_CORE_STATS_HPP_
#define MCMLAB_CORE_STATS_HPP_

#include <span>

namespace mcmlab::core {

// Gaussian upper tail Q(z) = P(N(0,1) > z).
double gaussian_q(double z);

double mean(std::span<const double> xs);
// Unbiased sample variance.
double variance(std::span<const double> xs);
double standard_error(std::span<const double> xs);
double pearson_correlation(std::span<const double> xs, std::span<const double> ys);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
// distribution (Stephens' small-sample correction).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Kolmogorov survival function Q_KS(lambda) = 2 sum (-1)^(j-1) exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

}  // namespace mcmlab::core

#endif  // MCMLAB_CORE_STATS_HPP_
