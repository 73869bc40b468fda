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

#ifndef MCMLAB_CORE_CHANNEL_HPP_
#define MCMLAB_CORE_CHANNEL_HPP_

#include <vector>

#include "mcmlab/core/density_state.hpp"
#include "mcmlab/core/linalg.hpp"

namespace mcmlab::core {

// CP map stored as Kraus operators. Choi convention:
// J = sum_ij |i><j| (x) L(|i><j|), input factor first, unnormalized.
class QuantumChannel {
 public:
  // Throws PreconditionError if sum K^dag K exceeds identity beyond 1e-10.
  static QuantumChannel from_kraus(std::vector<Matrix> kraus);
  // Throws NumericalError if the Choi matrix is not PSD within -1e-8.
  static QuantumChannel from_choi(const Matrix& choi, int n_qubits);
  static QuantumChannel identity(int n_qubits);
  static QuantumChannel unitary(const Matrix& u);

  int num_qubits() const { return n_qubits_; }
  int dim() const { return 1 << n_qubits_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  Matrix choi() const;
  bool is_trace_preserving(double tolerance = 1e-10) const;

  // sum_k K op K^dag, for any (not necessarily Hermitian) operator.
  Matrix apply(const Matrix& op) const;

  // next o this
  QuantumChannel then(const QuantumChannel& next) const;

 private:
  QuantumChannel(int n_qubits, std::vector<Matrix> kraus)
      : n_qubits_(n_qubits), kraus_(std::move(kraus)) {}

  int n_qubits_;
  std::vector<Matrix> kraus_;
};

// Off-diagonal elements are multiplied by `contrast` in [0, 1].
QuantumChannel dephasing(double contrast);
// rho -> (1 - p) rho + p I/2.
QuantumChannel depolarizing(double p);

DensityState apply_channel(const DensityState& state, const QuantumChannel& ch,
                           const std::vector<Qubit>& targets);

// Kraus-level operator version used by branch propagation.
Matrix apply_channel(const Matrix& op, const QuantumChannel& ch,
                     const std::vector<Qubit>& targets,
                     const std::vector<Qubit>& qubits);

}  // namespace mcmlab::core

#endif  // MCMLAB_CORE_CHANNEL_HPP_
