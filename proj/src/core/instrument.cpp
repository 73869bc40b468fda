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

#include "mcmlab/core/instrument.hpp"

#include <algorithm>

#include "mcmlab/core/errors.hpp"

namespace mcmlab::core {

PauliTransferMap QuantumInstrument::total() const {
  return {maps[0].n_qubits, maps[0].matrix + maps[1].matrix};
}

void QuantumInstrument::validate(double cp_tol, double tp_tol) const {
  if (maps[0].n_qubits != maps[1].n_qubits) {
    throw PreconditionError("instrument maps act on different qubit counts");
  }
  for (const PauliTransferMap& m : maps) {
    if (min_eigenvalue(choi_of_ptm(m)) < -tol(cp_tol)) {
      throw NumericalError("instrument map is not completely positive");
    }
  }
  if (!is_trace_preserving(total(), tol(tp_tol))) {
    throw NumericalError("instrument maps do not sum to a trace-preserving map");
  }
}

double QuantumInstrument::max_abs_difference(const QuantumInstrument& other) const {
  double d = 0.0;
  for (int k = 0; k < 2; ++k) {
    d = std::max(d, (maps[k].matrix - other.maps[k].matrix).cwiseAbs().maxCoeff());
  }
  return d;
}

}  // namespace mcmlab::core
