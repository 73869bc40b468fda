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

#include "mcmlab/tomo/error_generator.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <unsupported/Eigen/MatrixFunctions>

#include "mcmlab/core/errors.hpp"
#include "mcmlab/core/linalg.hpp"

namespace mcmlab::tomo {

using core::Matrix;
using core::PauliTransferMap;
using core::RealMatrix;
using core::RealVector;

namespace {

int pauli_weight(const std::string& label) {
  return static_cast<int>(std::count_if(label.begin(), label.end(), [](char c) { return c != 'I'; }));
}

// Representatives that claim a generator class before anything else.
std::vector<std::string> leading_stochastic(int n) {
  if (n == 1) return {"Z", "X"};
  if (n == 2) return {"ZI", "IX"};
  return {};
}

PauliTransferMap generator_ptm(GeneratorKind kind, int index, int n) {
  const Matrix& p = core::pauli_operator(index, n);
  if (kind == GeneratorKind::Hamiltonian) {
    return core::ptm_of_superoperator(
        [&p](const Matrix& x) -> Matrix { return core::cplx(0, -1) * (p * x - x * p); }, n);
  }
  return core::ptm_of_superoperator([&p](const Matrix& x) -> Matrix { return p * x * p - x; }, n);
}

// Q'_k(X) = Tr_A Q_k(X (x) |1><1|) for a (data, ancilla) instrument.
Matrix conditional_data_map(const PauliTransferMap& q, const Matrix& x) {
  const Matrix out = core::apply_ptm(q, core::kron(x, core::gates::projector(1)));
  Matrix reduced = Matrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) reduced(a, b) = out(2 * a, 2 * b) + out(2 * a + 1, 2 * b + 1);
  }
  return reduced;
}

PauliTransferMap conditional_ptm(const PauliTransferMap& q) {
  return core::ptm_of_superoperator([&q](const Matrix& x) { return conditional_data_map(q, x); },
                                    1);
}

void require_two_qubit(const core::QuantumInstrument& inst) {
  if (inst.n_qubits() != 2) {
    throw PreconditionError("error generator analysis needs a (data, ancilla) instrument");
  }
}

}  // namespace

std::vector<ElementaryGenerator> elementary_generators(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 4) throw PreconditionError("elementary_generators: bad size");
  const int dim = 1 << (2 * n_qubits);
  const auto leading = leading_stochastic(n_qubits);
  std::vector<std::tuple<int, int, int, int>> order;  // tier, weight, kind, index
  for (int kind = 0; kind < 2; ++kind) {
    for (int i = 1; i < dim; ++i) {
      const std::string label = core::pauli_label(i, n_qubits);
      auto it = std::find(leading.begin(), leading.end(), label);
      const bool lead = kind == 0 && it != leading.end();
      order.emplace_back(lead ? static_cast<int>(it - leading.begin()) : 100,
                         lead ? 0 : pauli_weight(label), kind, i);
    }
  }
  std::sort(order.begin(), order.end());
  std::vector<ElementaryGenerator> out;
  for (const auto& [tier, weight, kind, index] : order) {
    const GeneratorKind k = kind == 0 ? GeneratorKind::Stochastic : GeneratorKind::Hamiltonian;
    out.push_back({k, core::pauli_label(index, n_qubits), generator_ptm(k, index, n_qubits)});
  }
  return out;
}

PauliTransferMap register_dilation(const core::QuantumInstrument& inst) {
  require_two_qubit(inst);
  auto map = [&inst](const Matrix& sigma) -> Matrix {
    Matrix out = Matrix::Zero(4, 4);
    for (int r = 0; r < 2; ++r) {
      Matrix block(2, 2);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) block(a, b) = sigma(2 * a + r, 2 * b + r);
      }
      for (int k = 0; k < 2; ++k) {
        out += core::kron(conditional_data_map(inst.maps[k], block),
                          core::gates::projector(k ^ r));
      }
    }
    return out;
  };
  return core::ptm_of_superoperator(map, 2);
}

ErrorGeneratorDecomposition decompose_generator(const PauliTransferMap& est,
                                                const PauliTransferMap& target) {
  if (est.n_qubits != target.n_qubits) {
    throw PreconditionError("decompose_generator: qubit counts differ");
  }
  const int n = est.n_qubits;
  const int dim = est.dim();
  Eigen::JacobiSVD<RealMatrix> svd(target.matrix, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector sv = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, sv(0));
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  if (rank == 0) throw NumericalError("decompose_generator: target map is zero");
  const RealMatrix u_r = svd.matrixU().leftCols(rank);
  const RealMatrix range = u_r * u_r.transpose();
  const RealMatrix pinv = svd.matrixV().leftCols(rank) *
                          sv.head(rank).cwiseInverse().asDiagonal() * u_r.transpose();
  const RealMatrix ratio = est.matrix * pinv + (RealMatrix::Identity(dim, dim) - range);

  Eigen::EigenSolver<RealMatrix> es(ratio, false);
  for (int i = 0; i < dim; ++i) {
    const auto ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) < 1e-9 && ev.real() < 1e-12) {
      throw NumericalError("decompose_generator: est * target^+ has a non-positive real eigenvalue");
    }
  }
  const Matrix log_c = ratio.cast<core::cplx>().log();
  if (log_c.imag().cwiseAbs().maxCoeff() > 1e-8) {
    throw NumericalError("decompose_generator: matrix logarithm is not real");
  }
  const RealMatrix l = log_c.real() * range;

  const auto gens = elementary_generators(n);
  ErrorGeneratorDecomposition out;
  std::vector<int> chosen;
  std::vector<RealVector> basis;
  std::vector<RealVector> columns;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const RealMatrix gp = gens[g].ptm.matrix * range;
    RealVector v = Eigen::Map<const RealVector>(gp.data(), gp.size());
    const double norm = v.norm();
    RealVector w = v;
    for (const RealVector& b : basis) w -= b.dot(w) * b;
    if (norm > 1e-12 && w.norm() > 1e-6 * norm) {
      basis.push_back(w / w.norm());
      chosen.push_back(static_cast<int>(g));
      columns.push_back(v);
    } else {
      const char* prefix = gens[g].kind == GeneratorKind::Hamiltonian ? "H_" : "S_";
      out.unidentifiable.push_back(prefix + gens[g].pauli);
    }
    auto& slot = gens[g].kind == GeneratorKind::Hamiltonian ? out.h : out.s;
    slot[gens[g].pauli] = 0.0;
  }
  const RealVector target_vec = Eigen::Map<const RealVector>(l.data(), l.size());
  if (!chosen.empty()) {
    RealMatrix a(target_vec.size(), static_cast<Eigen::Index>(chosen.size()));
    for (std::size_t c = 0; c < chosen.size(); ++c) a.col(static_cast<Eigen::Index>(c)) = columns[c];
    const RealVector coef = a.colPivHouseholderQr().solve(target_vec);
    for (std::size_t c = 0; c < chosen.size(); ++c) {
      const auto& gen = gens[chosen[c]];
      auto& slot = gen.kind == GeneratorKind::Hamiltonian ? out.h : out.s;
      slot[gen.pauli] = coef(static_cast<Eigen::Index>(c));
    }
    out.residual_norm = (target_vec - a * coef).norm();
  } else {
    out.residual_norm = target_vec.norm();
  }
  return out;
}

ErrorGeneratorDecomposition error_generator(const core::QuantumInstrument& est,
                                            const core::QuantumInstrument& target) {
  return decompose_generator(register_dilation(est), register_dilation(target));
}

std::array<ErrorGeneratorDecomposition, 2> error_generator_per_outcome(
    const core::QuantumInstrument& est, const core::QuantumInstrument& target) {
  require_two_qubit(est);
  require_two_qubit(target);
  std::array<ErrorGeneratorDecomposition, 2> out;
  for (int k = 0; k < 2; ++k) {
    const auto single = decompose_generator(conditional_ptm(est.maps[k]),
                                            conditional_ptm(target.maps[k]));
    auto& d = out[k];
    for (const auto& [label, v] : single.h) d.h[label + "I"] = v;
    for (const auto& [label, v] : single.s) d.s[label + "I"] = v;
    for (const auto& label : single.unidentifiable) d.unidentifiable.push_back(label + "I");
    d.residual_norm = single.residual_norm;
  }
  return out;
}

double pure_readout_error(const core::QuantumInstrument& est,
                          const core::QuantumInstrument& target) {
  const double s = error_generator(est, target).s.at("IX");
  return (1.0 - std::exp(-2.0 * s)) / 2.0;
}

double dephasing_coefficient(const core::QuantumInstrument& est,
                             const core::QuantumInstrument& target) {
  return error_generator(est, target).s.at("ZI");
}

}  // namespace mcmlab::tomo
