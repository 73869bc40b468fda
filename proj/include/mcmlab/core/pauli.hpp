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

#ifndef MCMLAB_CORE_PAULI_HPP_
#define MCMLAB_CORE_PAULI_HPP_

#include <functional>
#include <string>
#include <string_view>

#include "mcmlab/core/channel.hpp"
#include "mcmlab/core/linalg.hpp"

namespace mcmlab::core {

// Pauli strings are indexed lexicographically over {I, X, Y, Z} with the first
// qubit most significant: index = sum_k p_k 4^(n-1-k).
std::string pauli_label(int index, int n_qubits);
int pauli_index(std::string_view label);
// Unnormalized Pauli operator P (not P / sqrt(2^n)).
const Matrix& pauli_operator(int index, int n_qubits);

// Real 4^n x 4^n matrix R_ij = Tr(s_i L(s_j)), s_i = P_i / sqrt(2^n).
struct PauliTransferMap {
  int n_qubits = 0;
  RealMatrix matrix;

  int dim() const { return 1 << (2 * n_qubits); }
  static PauliTransferMap identity(int n_qubits);
};

using Superoperator = std::function<Matrix(const Matrix&)>;

PauliTransferMap ptm_of_superoperator(const Superoperator& map, int n_qubits);
PauliTransferMap ptm_of_channel(const QuantumChannel& ch);
PauliTransferMap ptm_of_unitary(const Matrix& u);
// Throws NumericalError if the Choi matrix is not PSD within -1e-8.
QuantumChannel channel_of_ptm(const PauliTransferMap& ptm);

Matrix choi_of_ptm(const PauliTransferMap& ptm);
PauliTransferMap ptm_of_choi(const Matrix& choi, int n_qubits);

// Action of the map on an arbitrary operator.
Matrix apply_ptm(const PauliTransferMap& ptm, const Matrix& op);

// second o first
PauliTransferMap compose(const PauliTransferMap& second, const PauliTransferMap& first);

bool is_trace_preserving(const PauliTransferMap& ptm, double tolerance = 1e-10);

}  // namespace mcmlab::core

#endif  // MCMLAB_CORE_PAULI_HPP_
