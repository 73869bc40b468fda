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

#include "mcmlab/core/density_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mcmlab/core/errors.hpp"

namespace mcmlab::core {

DensityState::DensityState(std::vector<Qubit> qubits, Matrix rho)
    : qubits_(std::move(qubits)), rho_(std::move(rho)) {
  if (!is_register_ordered(qubits_)) {
    throw PreconditionError("density state qubits must be unique and in register order");
  }
  const Eigen::Index dim = Eigen::Index{1} << qubits_.size();
  if (rho_.rows() != dim || rho_.cols() != dim) {
    throw PreconditionError("density matrix dimension does not match qubit count");
  }
  const double trace_err = std::abs(rho_.trace() - cplx(1.0, 0.0));
  if (trace_err > tol(1e-12)) {
    std::ostringstream os;
    os << "density matrix trace deviates from 1 by " << trace_err;
    throw PreconditionError(os.str());
  }
  if (!is_hermitian(rho_, tol(1e-12))) {
    throw PreconditionError("density matrix is not Hermitian");
  }
  // Hermitian within tolerance; store the exactly Hermitian part.
  rho_ = (rho_ + rho_.adjoint()) / 2.0;
  if (min_eigenvalue(rho_) < -tol(1e-10)) {
    throw PreconditionError("density matrix has a negative eigenvalue");
  }
}

DensityState DensityState::pure(std::vector<Qubit> qubits, const Vector& psi) {
  Vector v = psi / psi.norm();
  return DensityState(std::move(qubits), v * v.adjoint());
}

DensityState DensityState::product(std::vector<std::pair<Qubit, Vector>> factors) {
  std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
    return register_index(a.first) < register_index(b.first);
  });
  std::vector<Qubit> qubits;
  Vector psi = Vector::Ones(1);
  for (const auto& [q, v] : factors) {
    qubits.push_back(q);
    Vector next(psi.size() * 2);
    for (Eigen::Index i = 0; i < psi.size(); ++i) next.segment(2 * i, 2) = psi(i) * v;
    psi = next;
  }
  return pure(std::move(qubits), psi);
}

DensityState DensityState::basis(std::vector<Qubit> qubits, const std::vector<int>& bits) {
  if (bits.size() != qubits.size()) throw PreconditionError("basis: size mismatch");
  int index = 0;
  for (int b : bits) index = (index << 1) | (b & 1);
  const int dim = 1 << qubits.size();
  Vector psi = Vector::Zero(dim);
  psi(index) = 1.0;
  return pure(std::move(qubits), psi);
}

bool DensityState::contains(Qubit q) const {
  return std::find(qubits_.begin(), qubits_.end(), q) != qubits_.end();
}

DensityState apply_unitary(const DensityState& state, const Matrix& u,
                           const std::vector<Qubit>& targets) {
  if (!is_unitary(u, tol(1e-10))) throw PreconditionError("apply_unitary: matrix is not unitary");
  const Matrix full = embed(u, targets, state.qubits());
  return DensityState(state.qubits(), full * state.matrix() * full.adjoint());
}

DensityState partial_trace(const DensityState& state, std::vector<Qubit> keep) {
  if (keep.empty()) throw PreconditionError("partial_trace: empty keep list");
  std::sort(keep.begin(), keep.end(),
            [](Qubit a, Qubit b) { return register_index(a) < register_index(b); });
  return DensityState(keep, partial_trace(state.matrix(), state.qubits(), keep));
}

double expectation(const DensityState& state, const Matrix& op,
                   const std::vector<Qubit>& targets) {
  const Matrix full = embed(op, targets, state.qubits());
  return (state.matrix() * full).trace().real();
}

BlochVector bloch_vector(const DensityState& state, Qubit q) {
  const Matrix r = partial_trace(state.matrix(), state.qubits(), {q});
  BlochVector b;
  b.x = 2.0 * r(0, 1).real();
  b.y = -2.0 * r(0, 1).imag();
  b.z = (r(0, 0) - r(1, 1)).real();
  return b;
}

double bloch_xy_length(const DensityState& state, Qubit q) {
  const BlochVector b = bloch_vector(state, q);
  return std::hypot(b.x, b.y);
}

}  // namespace mcmlab::core
