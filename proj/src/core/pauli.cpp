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

#include "mcmlab/core/pauli.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include "mcmlab/core/errors.hpp"

namespace mcmlab::core {

namespace {

constexpr std::array<char, 4> kLetters{'I', 'X', 'Y', 'Z'};

const Matrix& single(int p) {
  static const std::array<Matrix, 4> kSingle{gates::identity(), gates::x(), gates::y(),
                                             gates::z()};
  return kSingle[p];
}

const std::vector<Matrix>& table(int n_qubits) {
  static std::array<std::vector<Matrix>, 5> tables;
  static std::array<std::once_flag, 5> flags;
  if (n_qubits < 1 || n_qubits > 4) throw PreconditionError("Pauli table supports 1-4 qubits");
  std::call_once(flags[n_qubits], [n_qubits] {
    const int count = 1 << (2 * n_qubits);
    std::vector<Matrix> ops;
    ops.reserve(count);
    for (int idx = 0; idx < count; ++idx) {
      Matrix m = Matrix::Identity(1, 1);
      for (int k = 0; k < n_qubits; ++k) {
        m = kron(m, single((idx >> (2 * (n_qubits - 1 - k))) & 3));
      }
      ops.push_back(std::move(m));
    }
    tables[n_qubits] = std::move(ops);
  });
  return tables[n_qubits];
}

}  // namespace

std::string pauli_label(int index, int n_qubits) {
  std::string s;
  for (int k = 0; k < n_qubits; ++k) s += kLetters[(index >> (2 * (n_qubits - 1 - k))) & 3];
  return s;
}

int pauli_index(std::string_view label) {
  int idx = 0;
  for (char c : label) {
    int p = -1;
    for (int i = 0; i < 4; ++i) {
      if (kLetters[i] == c) p = i;
    }
    if (p < 0) throw PreconditionError("invalid Pauli label");
    idx = idx * 4 + p;
  }
  return idx;
}

const Matrix& pauli_operator(int index, int n_qubits) { return table(n_qubits).at(index); }

PauliTransferMap PauliTransferMap::identity(int n_qubits) {
  const int d = 1 << (2 * n_qubits);
  return {n_qubits, RealMatrix::Identity(d, d)};
}

PauliTransferMap ptm_of_superoperator(const Superoperator& map, int n_qubits) {
  const auto& paulis = table(n_qubits);
  const int count = static_cast<int>(paulis.size());
  const double d = static_cast<double>(1 << n_qubits);
  RealMatrix r(count, count);
  for (int j = 0; j < count; ++j) {
    const Matrix out = map(paulis[j]);
    for (int i = 0; i < count; ++i) r(i, j) = (paulis[i] * out).trace().real() / d;
  }
  return {n_qubits, r};
}

PauliTransferMap ptm_of_channel(const QuantumChannel& ch) {
  return ptm_of_superoperator([&ch](const Matrix& m) { return ch.apply(m); },
                              ch.num_qubits());
}

PauliTransferMap ptm_of_unitary(const Matrix& u) {
  return ptm_of_channel(QuantumChannel::unitary(u));
}

Matrix choi_of_ptm(const PauliTransferMap& ptm) {
  // J = sum_ij R_ij s_j^T (x) s_i with s = P / sqrt(d).
  const auto& paulis = table(ptm.n_qubits);
  const int count = static_cast<int>(paulis.size());
  const double d = static_cast<double>(1 << ptm.n_qubits);
  const int dd = 1 << (2 * ptm.n_qubits);
  Matrix j = Matrix::Zero(dd, dd);
  for (int b = 0; b < count; ++b) {
    Matrix out = Matrix::Zero(1 << ptm.n_qubits, 1 << ptm.n_qubits);
    for (int a = 0; a < count; ++a) {
      if (ptm.matrix(a, b) != 0.0) out += ptm.matrix(a, b) * paulis[a];
    }
    j += kron(paulis[b].transpose(), out) / d;
  }
  return j;
}

PauliTransferMap ptm_of_choi(const Matrix& choi, int n_qubits) {
  // L(X) = Tr_in[(X^T (x) I) J].
  const int d = 1 << n_qubits;
  auto map = [&](const Matrix& x) {
    Matrix out = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        if (x(a, b) != cplx(0.0)) out += x(a, b) * choi.block(a * d, b * d, d, d);
      }
    }
    return out;
  };
  return ptm_of_superoperator(map, n_qubits);
}

QuantumChannel channel_of_ptm(const PauliTransferMap& ptm) {
  return QuantumChannel::from_choi(choi_of_ptm(ptm), ptm.n_qubits);
}

Matrix apply_ptm(const PauliTransferMap& ptm, const Matrix& op) {
  const auto& paulis = table(ptm.n_qubits);
  const int count = static_cast<int>(paulis.size());
  const double d = static_cast<double>(1 << ptm.n_qubits);
  Eigen::VectorXcd coords(count);
  for (int j = 0; j < count; ++j) coords(j) = (paulis[j] * op).trace() / std::sqrt(d);
  const Eigen::VectorXcd out = ptm.matrix.cast<cplx>() * coords;
  Matrix result = Matrix::Zero(op.rows(), op.cols());
  for (int i = 0; i < count; ++i) result += out(i) * paulis[i] / std::sqrt(d);
  return result;
}

PauliTransferMap compose(const PauliTransferMap& second, const PauliTransferMap& first) {
  if (second.n_qubits != first.n_qubits) throw PreconditionError("PTM size mismatch");
  return {first.n_qubits, second.matrix * first.matrix};
}

bool is_trace_preserving(const PauliTransferMap& ptm, double tolerance) {
  RealVector row = RealVector::Zero(ptm.dim());
  row(0) = 1.0;
  return (ptm.matrix.row(0).transpose() - row).cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace mcmlab::core
