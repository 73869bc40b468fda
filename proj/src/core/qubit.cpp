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

#include "mcmlab/core/qubit.hpp"

#include <string>

#include "mcmlab/core/errors.hpp"

namespace mcmlab::core {

std::string_view name(Qubit q) {
  switch (q) {
    case Qubit::A2: return "A2";
    case Qubit::A1: return "A1";
    case Qubit::D1: return "D1";
    case Qubit::D2: return "D2";
  }
  return "?";
}

std::string_view name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Qubit parse_qubit(std::string_view text) {
  for (Qubit q : kRegister) {
    if (name(q) == text) return q;
  }
  throw PreconditionError("unknown qubit label '" + std::string(text) + "'");
}

bool is_register_ordered(const std::vector<Qubit>& qubits) {
  if (qubits.empty()) return false;
  for (std::size_t i = 1; i < qubits.size(); ++i) {
    if (register_index(qubits[i - 1]) >= register_index(qubits[i])) return false;
  }
  return true;
}

}  // namespace mcmlab::core
