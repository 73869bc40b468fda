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

#ifndef MCMLAB_SRC_EXPERIMENTS_COMMON_HPP_
#define MCMLAB_SRC_EXPERIMENTS_COMMON_HPP_

#include <cmath>
#include <string>

#include "mcmlab/experiments/experiments.hpp"

namespace mcmlab::exp::detail {

inline mcm::NoiseModel select_noise(const RunOptions& run, mcm::NoiseModel exact_default,
                                    mcm::NoiseModel shot_default) {
  mcm::NoiseModel n = run.exact() ? exact_default : shot_default;
  if (run.readout) n.classification = *run.readout;
  return n;
}

// Rounded to the femtosecond so grid points print cleanly.
inline double us(double seconds) { return std::round(seconds * 1e15) / 1e9; }
inline double in_pi(double rad) { return rad / core::kPi; }

inline std::string qubit_name(core::Qubit q) { return std::string(core::name(q)); }

}  // namespace mcmlab::exp::detail

#endif  // MCMLAB_SRC_EXPERIMENTS_COMMON_HPP_
