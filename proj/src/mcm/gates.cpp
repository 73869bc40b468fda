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

#include "mcmlab/mcm/gates.hpp"

#include <cmath>

namespace mcmlab::mcm {

using core::Matrix;
namespace gates = core::gates;

Matrix GateSequence::unitary(const std::vector<Qubit>& qubits) const {
  const int dim = 1 << qubits.size();
  Matrix u = Matrix::Identity(dim, dim);
  for (const GateOp& op : ops) u = core::embed(op.u, op.targets, qubits) * u;
  return u;
}

Matrix exchange_unitary(double phi) {
  Matrix u = Matrix::Zero(4, 4);
  const core::cplx same = std::polar(1.0, -phi / 4), diff = std::polar(1.0, phi / 4);
  u(0, 0) = same;
  u(1, 1) = diff;
  u(2, 2) = diff;
  u(3, 3) = same;
  return u;
}

GateSequence decoupled_exchange(double phi, double crosstalk, Qubit q1, Qubit q2) {
  const Matrix half = core::kron(gates::rz(crosstalk), gates::rz(crosstalk)) *
                      exchange_unitary(phi / 2);
  const Matrix xx = core::kron(gates::x(), gates::x());
  GateSequence seq;
  seq.ops.push_back({"exchange-half", half, {q1, q2}});
  seq.ops.push_back({"X-X", xx, {q1, q2}});
  seq.ops.push_back({"exchange-half", half, {q1, q2}});
  seq.ops.push_back({"X-X", xx, {q1, q2}});
  return seq;
}

GateSequence build_dcz(Qubit q1, Qubit q2, const device::GateErrorParams* errors) {
  const double over = errors ? errors->cz_overrotation : 0.0;
  const double crosstalk = errors ? errors->dcz_crosstalk : 0.0;
  GateSequence seq = decoupled_exchange(core::kPi + over, crosstalk, q1, q2);
  seq.ops.push_back({"vZ(-pi/2)", gates::rz(-core::kPi / 2), {q1}});
  seq.ops.push_back({"vZ(-pi/2)", gates::rz(-core::kPi / 2), {q2}});
  return seq;
}

GateSequence build_cnot(Basis basis, Qubit data, Qubit ancilla,
                        const device::GateErrorParams* errors) {
  GateSequence seq;
  if (basis == Basis::X) seq.ops.push_back({"sqrtY", gates::sqrt_y(), {data}});
  seq.ops.push_back({"Y(-pi/2)", gates::ry(-core::kPi / 2), {ancilla}});
  for (GateOp& op : build_dcz(data, ancilla, errors).ops) seq.ops.push_back(std::move(op));
  seq.ops.push_back({"Y(pi/2)", gates::ry(core::kPi / 2), {ancilla}});
  if (basis == Basis::X) seq.ops.push_back({"sqrtY^dag", gates::sqrt_y().adjoint(), {data}});
  return seq;
}

}  // namespace mcmlab::mcm
