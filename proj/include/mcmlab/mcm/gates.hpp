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

#ifndef MCMLAB_MCM_GATES_HPP_
#define MCMLAB_MCM_GATES_HPP_

#include <string>
#include <vector>

#include "mcmlab/core/linalg.hpp"
#include "mcmlab/device/device_config.hpp"
#include "mcmlab/mcm/mcm_spec.hpp"

namespace mcmlab::mcm {

struct GateOp {
  std::string label;
  core::Matrix u;
  std::vector<Qubit> targets;
};

struct GateSequence {
  std::vector<GateOp> ops;
  // Product of the ops acting on `qubits`.
  core::Matrix unitary(const std::vector<Qubit>& qubits) const;
};

// Exchange evolution exp(-i phi ZZ / 4) on two qubits: conditional phase phi.
core::Matrix exchange_unitary(double phi);

// Exchange split in two halves with X pulses on both qubits after each half;
// single-qubit phases `crosstalk` accrued per half cancel.
GateSequence decoupled_exchange(double phi, double crosstalk, Qubit q1, Qubit q2);

// Decoupled CZ from exchange plus virtual Z(-pi/2) corrections.
GateSequence build_dcz(Qubit q1, Qubit q2, const device::GateErrorParams* errors = nullptr);

// CNOT from `data` (control) to `ancilla`. X basis wraps the data qubit in
// sqrt(Y) ... sqrt(Y)^dag, so |+> flips the ancilla and |-> leaves it.
GateSequence build_cnot(Basis basis, Qubit data = Qubit::D1, Qubit ancilla = Qubit::A1,
                        const device::GateErrorParams* errors = nullptr);

}  // namespace mcmlab::mcm

#endif  // MCMLAB_MCM_GATES_HPP_
