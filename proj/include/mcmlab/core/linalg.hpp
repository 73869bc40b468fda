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

#ifndef MCMLAB_CORE_LINALG_HPP_
#define MCMLAB_CORE_LINALG_HPP_

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "mcmlab/core/qubit.hpp"

namespace mcmlab::core {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Global multiplier applied to every invariant tolerance. Tests may raise it.
double tolerance_scale();
void set_tolerance_scale(double scale);
inline double tol(double base) { return base * tolerance_scale(); }

namespace gates {
Matrix identity(int n_qubits = 1);
Matrix x();
Matrix y();
Matrix z();
Matrix hadamard();
// exp(-i theta P / 2)
Matrix rx(double theta);
Matrix ry(double theta);
Matrix rz(double theta);
Matrix sqrt_x();
Matrix sqrt_y();
Matrix projector(int bit);
}  // namespace gates

Vector ket(int bit);
Vector ket_plus();
Vector ket_minus();

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_all(const std::vector<Matrix>& factors);

bool is_unitary(const Matrix& u, double tolerance);
bool is_hermitian(const Matrix& m, double tolerance);

// Smallest eigenvalue of the Hermitian part of `m`.
double min_eigenvalue(const Matrix& m);

// Square root of a Hermitian PSD matrix; negative eigenvalues are clipped to 0.
Matrix psd_sqrt(const Matrix& m);

// Operator acting on `targets` (first target = most significant) lifted to the
// full register `qubits`.
Matrix embed(const Matrix& op, const std::vector<Qubit>& targets,
             const std::vector<Qubit>& qubits);

// Relabels tensor factors: `op` is ordered as `from`, result as `to`.
Matrix reorder(const Matrix& op, const std::vector<Qubit>& from,
               const std::vector<Qubit>& to);

// Partial trace keeping `keep`; result factors follow the order of `keep`.
Matrix partial_trace(const Matrix& op, const std::vector<Qubit>& qubits,
                     const std::vector<Qubit>& keep);

// K op K^dagger for K acting on `targets` (any square 2^k matrix), without
// forming the full-register operator.
Matrix conjugate_local(const Matrix& op, const Matrix& k, const std::vector<Qubit>& targets,
                       const std::vector<Qubit>& qubits);

// Scales the coherences of `target` in op by `contrast`.
Matrix dephase_local(const Matrix& op, double contrast, Qubit target,
                     const std::vector<Qubit>& qubits);

// Wraps into (-pi, pi].
double wrap_phase(double theta);

}  // namespace mcmlab::core

#endif  // MCMLAB_CORE_LINALG_HPP_
