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

#ifndef MCMLAB_TOMO_FIDELITY_HPP_
#define MCMLAB_TOMO_FIDELITY_HPP_

#include "mcmlab/core/instrument.hpp"

namespace mcmlab::tomo {

// Entanglement fidelity between the channels rho -> sum_k I_k(rho) (x) |k><k|.
// Because the register is classical, this is (sum_k Tr|sqrt(A_k) sqrt(B_k)|)^2
// with A_k, B_k the outcome Choi matrices normalized by the system dimension.
// Throws NumericalError for inputs that are not CP within 1e-8.
double instrument_fidelity(const core::QuantumInstrument& est,
                           const core::QuantumInstrument& target);

}  // namespace mcmlab::tomo

#endif  // MCMLAB_TOMO_FIDELITY_HPP_
