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

#include "mcmlab/core/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "mcmlab/core/errors.hpp"

namespace mcmlab::core {

namespace {

std::atomic<double> g_tolerance_scale{1.0};

std::vector<int> positions_of(const std::vector<Qubit>& targets,
                              const std::vector<Qubit>& qubits) {
  std::vector<int> pos;
  pos.reserve(targets.size());
  for (Qubit t : targets) {
    auto it = std::find(qubits.begin(), qubits.end(), t);
    if (it == qubits.end()) {
      throw PreconditionError("qubit " + std::string(name(t)) + " not in register");
    }
    int p = static_cast<int>(it - qubits.begin());
    if (std::find(pos.begin(), pos.end(), p) != pos.end()) {
      throw PreconditionError("duplicate target qubit");
    }
    pos.push_back(p);
  }
  return pos;
}

int bit_of(int index, int position, int n) { return (index >> (n - 1 - position)) & 1; }

}  // namespace

double tolerance_scale() { return g_tolerance_scale.load(); }
void set_tolerance_scale(double scale) { g_tolerance_scale.store(scale); }

namespace gates {

Matrix identity(int n_qubits) {
  return Matrix::Identity(1 << n_qubits, 1 << n_qubits);
}

Matrix x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Matrix z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix hadamard() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Matrix rx(double theta) {
  Matrix m(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, cplx(0, -s), cplx(0, -s), c;
  return m;
}

Matrix ry(double theta) {
  Matrix m(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, -s, s, c;
  return m;
}

Matrix rz(double theta) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, -theta / 2);
  m(1, 1) = std::polar(1.0, theta / 2);
  return m;
}

Matrix sqrt_x() { return rx(kPi / 2); }
Matrix sqrt_y() { return ry(kPi / 2); }

Matrix projector(int bit) {
  Matrix m = Matrix::Zero(2, 2);
  m(bit, bit) = 1.0;
  return m;
}

}  // namespace gates

Vector ket(int bit) {
  Vector v = Vector::Zero(2);
  v(bit) = 1.0;
  return v;
}

Vector ket_plus() { return (ket(0) + ket(1)) / std::sqrt(2.0); }
Vector ket_minus() { return (ket(0) - ket(1)) / std::sqrt(2.0); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_all(const std::vector<Matrix>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors) out = kron(out, f);
  return out;
}

bool is_unitary(const Matrix& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <=
         tolerance;
}

bool is_hermitian(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

double min_eigenvalue(const Matrix& m) {
  Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix psd_sqrt(const Matrix& m) {
  Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix embed(const Matrix& op, const std::vector<Qubit>& targets,
             const std::vector<Qubit>& qubits) {
  const int n = static_cast<int>(qubits.size());
  const int k = static_cast<int>(targets.size());
  if (op.rows() != (1 << k) || op.cols() != (1 << k)) {
    throw PreconditionError("operator dimension does not match target count");
  }
  const std::vector<int> pos = positions_of(targets, qubits);
  int target_mask = 0;
  for (int p : pos) target_mask |= 1 << (n - 1 - p);
  const int dim = 1 << n;
  std::vector<int> sub(dim);
  for (int i = 0; i < dim; ++i) {
    int s = 0;
    for (int t = 0; t < k; ++t) s |= bit_of(i, pos[t], n) << (k - 1 - t);
    sub[i] = s;
  }
  Matrix out = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if ((i & ~target_mask) == (j & ~target_mask)) out(i, j) = op(sub[i], sub[j]);
    }
  }
  return out;
}

Matrix reorder(const Matrix& op, const std::vector<Qubit>& from,
               const std::vector<Qubit>& to) {
  const int n = static_cast<int>(from.size());
  if (to.size() != from.size()) throw PreconditionError("reorder: size mismatch");
  const std::vector<int> pos = positions_of(to, from);
  const int dim = 1 << n;
  // idx[i_to] = corresponding index in the `from` ordering.
  std::vector<int> idx(dim);
  for (int i = 0; i < dim; ++i) {
    int f = 0;
    for (int t = 0; t < n; ++t) f |= bit_of(i, t, n) << (n - 1 - pos[t]);
    idx[i] = f;
  }
  Matrix out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) out(i, j) = op(idx[i], idx[j]);
  }
  return out;
}

Matrix partial_trace(const Matrix& op, const std::vector<Qubit>& qubits,
                     const std::vector<Qubit>& keep) {
  if (keep.empty()) throw PreconditionError("partial_trace: empty keep list");
  const int n = static_cast<int>(qubits.size());
  const std::vector<int> pos = positions_of(keep, qubits);
  std::vector<int> traced;
  for (int p = 0; p < n; ++p) {
    if (std::find(pos.begin(), pos.end(), p) == pos.end()) traced.push_back(p);
  }
  const int k = static_cast<int>(keep.size());
  const int m = static_cast<int>(traced.size());
  Matrix out = Matrix::Zero(1 << k, 1 << k);
  auto compose = [&](int a, int e) {
    int full = 0;
    for (int t = 0; t < k; ++t) full |= ((a >> (k - 1 - t)) & 1) << (n - 1 - pos[t]);
    for (int t = 0; t < m; ++t) full |= ((e >> (m - 1 - t)) & 1) << (n - 1 - traced[t]);
    return full;
  };
  for (int a = 0; a < (1 << k); ++a) {
    for (int b = 0; b < (1 << k); ++b) {
      cplx acc = 0.0;
      for (int e = 0; e < (1 << m); ++e) acc += op(compose(a, e), compose(b, e));
      out(a, b) = acc;
    }
  }
  return out;
}

namespace {

// Plain complex product; std::complex's operator* carries the Annex G
// NaN recovery path, which dominates these small loops.
inline cplx cmul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

Matrix conjugate_local(const Matrix& op, const Matrix& k, const std::vector<Qubit>& targets,
                       const std::vector<Qubit>& qubits) {
  const int nt = static_cast<int>(targets.size());
  const Eigen::Index sub = Eigen::Index{1} << nt;
  if (nt == 0 || k.rows() != sub || k.cols() != sub) {
    throw PreconditionError("local operator does not match its targets");
  }
  const int n = static_cast<int>(qubits.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (op.rows() != dim || op.cols() != dim) {
    throw PreconditionError("operator dimension does not match register");
  }
  const std::vector<int> pos = positions_of(targets, qubits);
  // offset[a]: full-register bits of local index a
  std::vector<Eigen::Index> offset(static_cast<std::size_t>(sub), 0);
  Eigen::Index tmask = 0;
  for (Eigen::Index a = 0; a < sub; ++a) {
    for (int t = 0; t < nt; ++t) {
      if ((a >> (nt - 1 - t)) & 1) offset[static_cast<std::size_t>(a)] |= Eigen::Index{1} << (n - 1 - pos[t]);
    }
  }
  for (int t = 0; t < nt; ++t) tmask |= Eigen::Index{1} << (n - 1 - pos[t]);

  Matrix out = op;
  std::vector<cplx> buf(static_cast<std::size_t>(sub));
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & tmask) continue;
      for (Eigen::Index a = 0; a < sub; ++a) buf[a] = out(base | offset[a], c);
      for (Eigen::Index a = 0; a < sub; ++a) {
        cplx acc = 0.0;
        for (Eigen::Index b = 0; b < sub; ++b) acc += cmul(k(a, b), buf[b]);
        out(base | offset[a], c) = acc;
      }
    }
  }
  for (Eigen::Index base = 0; base < dim; ++base) {
    if (base & tmask) continue;
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index a = 0; a < sub; ++a) buf[a] = out(r, base | offset[a]);
      for (Eigen::Index a = 0; a < sub; ++a) {
        cplx acc = 0.0;
        for (Eigen::Index b = 0; b < sub; ++b) acc += cmul(buf[b], std::conj(k(a, b)));
        out(r, base | offset[a]) = acc;
      }
    }
  }
  return out;
}

Matrix dephase_local(const Matrix& op, double contrast, Qubit target,
                     const std::vector<Qubit>& qubits) {
  const int n = static_cast<int>(qubits.size());
  if (op.rows() != (Eigen::Index{1} << n) || op.cols() != op.rows()) {
    throw PreconditionError("operator dimension does not match register");
  }
  const Eigen::Index mask = Eigen::Index{1} << (n - 1 - positions_of({target}, qubits)[0]);
  Matrix out = op;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      if ((i ^ j) & mask) out(i, j) *= contrast;
    }
  }
  return out;
}

double wrap_phase(double theta) {
  double w = std::remainder(theta, 2 * kPi);
  if (w <= -kPi) w += 2 * kPi;
  return w;
}

}  // namespace mcmlab::core
