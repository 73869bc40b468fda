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

#include "mcmlab/core/channel.hpp"

#include <cmath>

#include "mcmlab/core/errors.hpp"

namespace mcmlab::core {

namespace {

int qubits_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim) throw PreconditionError("dimension is not a power of two");
  return n;
}

}  // namespace

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> kraus) {
  if (kraus.empty()) throw PreconditionError("channel needs at least one Kraus operator");
  const Eigen::Index dim = kraus.front().rows();
  Matrix sum = Matrix::Zero(dim, dim);
  for (const Matrix& k : kraus) {
    if (k.rows() != dim || k.cols() != dim) {
      throw PreconditionError("Kraus operators must be square and equally sized");
    }
    sum += k.adjoint() * k;
  }
  if (min_eigenvalue(Matrix::Identity(dim, dim) - sum) < -tol(1e-10)) {
    throw PreconditionError("Kraus completeness violated: sum K^dag K exceeds identity");
  }
  return QuantumChannel(qubits_for_dim(dim), std::move(kraus));
}

QuantumChannel QuantumChannel::from_choi(const Matrix& choi, int n_qubits) {
  const int d = 1 << n_qubits;
  if (choi.rows() != d * d || choi.cols() != d * d) {
    throw PreconditionError("Choi matrix dimension mismatch");
  }
  Matrix h = (choi + choi.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < -tol(1e-8) * scale) {
    throw NumericalError("Choi matrix is not positive semidefinite");
  }
  std::vector<Matrix> kraus;
  for (int a = 0; a < d * d; ++a) {
    const double lambda = es.eigenvalues()(a);
    if (lambda <= 1e-14 * scale) continue;
    const Vector v = es.eigenvectors().col(a) * std::sqrt(lambda);
    Matrix k(d, d);
    // J = sum_ij |i><j| (x) L(|i><j|): entry (i*d + o) of v gives K(o, i).
    for (int i = 0; i < d; ++i) {
      for (int o = 0; o < d; ++o) k(o, i) = v(i * d + o);
    }
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) kraus.push_back(Matrix::Zero(d, d));
  return QuantumChannel(n_qubits, std::move(kraus));
}

QuantumChannel QuantumChannel::identity(int n_qubits) {
  return QuantumChannel(n_qubits, {gates::identity(n_qubits)});
}

QuantumChannel QuantumChannel::unitary(const Matrix& u) {
  if (!is_unitary(u, tol(1e-10))) throw PreconditionError("matrix is not unitary");
  return QuantumChannel(qubits_for_dim(u.rows()), {u});
}

Matrix QuantumChannel::choi() const {
  const int d = dim();
  Matrix j = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Matrix e = Matrix::Zero(d, d);
      e(a, b) = 1.0;
      j.block(a * d, b * d, d, d) = apply(e);
    }
  }
  return j;
}

bool QuantumChannel::is_trace_preserving(double tolerance) const {
  Matrix sum = Matrix::Zero(dim(), dim());
  for (const Matrix& k : kraus_) sum += k.adjoint() * k;
  return (sum - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tolerance;
}

Matrix QuantumChannel::apply(const Matrix& op) const {
  if (op.rows() != dim() || op.cols() != dim()) {
    throw PreconditionError("channel/operator dimension mismatch");
  }
  Matrix out = Matrix::Zero(dim(), dim());
  for (const Matrix& k : kraus_) out += k * op * k.adjoint();
  return out;
}

QuantumChannel QuantumChannel::then(const QuantumChannel& next) const {
  if (next.n_qubits_ != n_qubits_) throw PreconditionError("channel composition size mismatch");
  std::vector<Matrix> kraus;
  for (const Matrix& b : next.kraus_) {
    for (const Matrix& a : kraus_) kraus.push_back(b * a);
  }
  return QuantumChannel(n_qubits_, std::move(kraus));
}

QuantumChannel dephasing(double contrast) {
  if (contrast < 0.0 || contrast > 1.0) throw PreconditionError("contrast must lie in [0, 1]");
  return QuantumChannel::from_kraus({std::sqrt((1 + contrast) / 2) * gates::identity(),
                                     std::sqrt((1 - contrast) / 2) * gates::z()});
}

QuantumChannel depolarizing(double p) {
  if (p < 0.0 || p > 1.0) throw PreconditionError("depolarizing probability must lie in [0, 1]");
  return QuantumChannel::from_kraus({std::sqrt(1 - 3 * p / 4) * gates::identity(),
                                     std::sqrt(p / 4) * gates::x(),
                                     std::sqrt(p / 4) * gates::y(),
                                     std::sqrt(p / 4) * gates::z()});
}

DensityState apply_channel(const DensityState& state, const QuantumChannel& ch,
                           const std::vector<Qubit>& targets) {
  return DensityState(state.qubits(),
                      apply_channel(state.matrix(), ch, targets, state.qubits()));
}

Matrix apply_channel(const Matrix& op, const QuantumChannel& ch,
                     const std::vector<Qubit>& targets, const std::vector<Qubit>& qubits) {
  if (static_cast<int>(targets.size()) != ch.num_qubits()) {
    throw PreconditionError("channel/target dimension mismatch");
  }
  Matrix out = Matrix::Zero(op.rows(), op.cols());
  for (const Matrix& k : ch.kraus()) {
    out += conjugate_local(op, k, targets, qubits);
  }
  return out;
}

}  // namespace mcmlab::core
