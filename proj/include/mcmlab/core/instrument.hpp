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

#ifndef MCMLAB_CORE_INSTRUMENT_HPP_
#define MCMLAB_CORE_INSTRUMENT_HPP_

#include <array>

#include "mcmlab/core/pauli.hpp"

namespace mcmlab::core {

// Two-outcome quantum instrument on (data, ancilla). maps[k] is the PTM of the
// conditional map for outcome k (0 = even parity, 1 = odd parity).
struct QuantumInstrument {
  std::array<PauliTransferMap, 2> maps;

  int n_qubits() const { return maps[0].n_qubits; }
  PauliTransferMap total() const;

  // Throws NumericalError unless each map is CP (Choi min eigenvalue >= -cp_tol)
  // and the summed map is trace preserving within tp_tol.
  void validate(double cp_tol = 1e-8, double tp_tol = 1e-8) const;

  double max_abs_difference(const QuantumInstrument& other) const;
};

}  // namespace mcmlab::core

#endif  // MCMLAB_CORE_INSTRUMENT_HPP_
