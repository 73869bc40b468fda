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

#ifndef MCMLAB_CORE_RNG_HPP_
#define MCMLAB_CORE_RNG_HPP_

#include <array>
#include <cstdint>
#include <string_view>

namespace mcmlab::core {

// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;
  static Counter block(Counter counter, Key key);
};

// 32-bit FNV-1a, used to turn experiment names into stream ids.
std::uint32_t fnv1a32(std::string_view text);

// Stream id for one sweep point of a named experiment.
std::uint32_t stream_id(std::string_view experiment, std::uint64_t point);

// Independent random stream for one shot. Counter words are
// (draw, stream id, shot lo, shot hi), key is the 64-bit seed, so streams are
// reproducible regardless of the order in which shots are executed.
class ShotStream {
 public:
  ShotStream(std::uint64_t seed, std::uint32_t stream, std::uint64_t shot);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via Box-Muller.
  double normal();
  double normal(double mean, double sigma) { return mean + sigma * normal(); }

 private:
  void refill();

  Philox4x32::Key key_;
  Philox4x32::Counter counter_;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mcmlab::core

#endif  // MCMLAB_CORE_RNG_HPP_
