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

#include "mcmlab/tomo/fidelity.hpp"

#include <algorithm>

#include "mcmlab/core/errors.hpp"
#include "mcmlab/core/linalg.hpp"

namespace mcmlab::tomo {

double instrument_fidelity(const core::QuantumInstrument& est,
                           const core::QuantumInstrument& target) {
  if (est.n_qubits() != target.n_qubits()) {
    throw PreconditionError("instrument_fidelity: qubit counts differ");
  }
  const double d = static_cast<double>(1 << est.n_qubits());
  double root = 0.0;
  for (int k = 0; k < 2; ++k) {
    const core::Matrix a = core::choi_of_ptm(est.maps[k]) / d;
    const core::Matrix b = core::choi_of_ptm(target.maps[k]) / d;
    if (core::min_eigenvalue(a) < -1e-8 || core::min_eigenvalue(b) < -1e-8) {
      throw NumericalError("instrument_fidelity: outcome map is not completely positive");
    }
    const core::Matrix m = core::psd_sqrt(a) * core::psd_sqrt(b);
    Eigen::JacobiSVD<core::Matrix> svd(m);
    root += svd.singularValues().sum();
  }
  return std::clamp(root * root, 0.0, 1.0);
}

}  // namespace mcmlab::tomo
