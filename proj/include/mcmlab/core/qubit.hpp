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

#ifndef MCMLAB_CORE_QUBIT_HPP_
#define MCMLAB_CORE_QUBIT_HPP_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace mcmlab::core {

// Register order is (A2, A1, D1, D2); the enum value is the register index.
enum class Qubit : std::uint8_t { A2 = 0, A1 = 1, D1 = 2, D2 = 3 };

inline constexpr std::array<Qubit, 4> kRegister{Qubit::A2, Qubit::A1, Qubit::D1,
                                                Qubit::D2};

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

constexpr bool is_data(Qubit q) { return q == Qubit::D1 || q == Qubit::D2; }
constexpr bool is_ancilla(Qubit q) { return !is_data(q); }
constexpr int register_index(Qubit q) { return static_cast<int>(q); }

std::string_view name(Qubit q);
std::string_view name(Parity p);
Qubit parse_qubit(std::string_view text);

// True if `qubits` is non-empty, duplicate free and in register order.
bool is_register_ordered(const std::vector<Qubit>& qubits);

}  // namespace mcmlab::core

#endif  // MCMLAB_CORE_QUBIT_HPP_
