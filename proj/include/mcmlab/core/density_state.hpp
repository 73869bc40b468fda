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

#ifndef MCMLAB_CORE_DENSITY_STATE_HPP_
#define MCMLAB_CORE_DENSITY_STATE_HPP_

#include <utility>
#include <vector>

#include "mcmlab/core/linalg.hpp"
#include "mcmlab/core/qubit.hpp"

namespace mcmlab::core {

// Density matrix on a register-ordered subset of {A2, A1, D1, D2}.
// The first listed qubit is the most significant tensor factor.
class DensityState {
 public:
  // Throws PreconditionError unless trace = 1 (1e-12), Hermitian (1e-12) and
  // min eigenvalue >= -1e-10.
  DensityState(std::vector<Qubit> qubits, Matrix rho);

  static DensityState pure(std::vector<Qubit> qubits, const Vector& psi);
  // Product of single-qubit kets; factors are sorted into register order.
  static DensityState product(std::vector<std::pair<Qubit, Vector>> factors);
  static DensityState basis(std::vector<Qubit> qubits, const std::vector<int>& bits);

  const std::vector<Qubit>& qubits() const { return qubits_; }
  const Matrix& matrix() const { return rho_; }
  int num_qubits() const { return static_cast<int>(qubits_.size()); }
  bool contains(Qubit q) const;

 private:
  std::vector<Qubit> qubits_;
  Matrix rho_;
};

DensityState apply_unitary(const DensityState& state, const Matrix& u,
                           const std::vector<Qubit>& targets);

// Reduced state on `keep`, returned in register order.
DensityState partial_trace(const DensityState& state, std::vector<Qubit> keep);

// Real part of Tr(rho O) with O acting on `targets`.
double expectation(const DensityState& state, const Matrix& op,
                   const std::vector<Qubit>& targets);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

BlochVector bloch_vector(const DensityState& state, Qubit q);
double bloch_xy_length(const DensityState& state, Qubit q);

}  // namespace mcmlab::core

#endif  // MCMLAB_CORE_DENSITY_STATE_HPP_
