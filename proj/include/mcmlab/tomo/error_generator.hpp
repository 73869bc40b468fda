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

#ifndef MCMLAB_TOMO_ERROR_GENERATOR_HPP_
#define MCMLAB_TOMO_ERROR_GENERATOR_HPP_

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mcmlab/core/instrument.hpp"
#include "mcmlab/core/pauli.hpp"

namespace mcmlab::tomo {

// Coefficients of L = sum h_P H_P + sum s_P S_P with H_P[x] = -i[P, x] and
// S_P[x] = P x P - x. Pauli labels are on (data, register).
struct ErrorGeneratorDecomposition {
  std::map<std::string, double> h;
  std::map<std::string, double> s;
  double residual_norm = 0.0;
  // Generators indistinguishable on the target's range from a higher-priority
  // representative; reported as 0.
  std::vector<std::string> unidentifiable;
};

enum class GeneratorKind { Hamiltonian, Stochastic };

struct ElementaryGenerator {
  GeneratorKind kind;
  std::string pauli;
  core::PauliTransferMap ptm;
};

// All 2 * (4^n - 1) elementary generators, in representative priority order:
// S_ZI and S_IX first, then weight-1 S, weight-1 H, weight-2 S, weight-2 H.
std::vector<ElementaryGenerator> elementary_generators(int n_qubits);

// The instrument restricted to the ancilla's nominal |1> input, with the
// outcome XORed into a register qubit: a channel on (data, register).
core::PauliTransferMap register_dilation(const core::QuantumInstrument& inst);

// Principal log of est * target^+ on the target's range, projected onto the
// elementary generators. Throws NumericalError when the logarithm is not real.
ErrorGeneratorDecomposition decompose_generator(const core::PauliTransferMap& est,
                                                const core::PauliTransferMap& target);

enum class GeneratorScope { OutcomeSummed, PerOutcome };

ErrorGeneratorDecomposition error_generator(const core::QuantumInstrument& est,
                                            const core::QuantumInstrument& target);

// One decomposition per outcome of the data-qubit conditional maps
// (labels carry I on the register slot).
std::array<ErrorGeneratorDecomposition, 2> error_generator_per_outcome(
    const core::QuantumInstrument& est, const core::QuantumInstrument& target);

// Flip probability (1 - exp(-2 s_IX)) / 2 of the outcome register.
double pure_readout_error(const core::QuantumInstrument& est,
                          const core::QuantumInstrument& target);
// s_ZI.
double dephasing_coefficient(const core::QuantumInstrument& est,
                             const core::QuantumInstrument& target);

}  // namespace mcmlab::tomo

#endif  // MCMLAB_TOMO_ERROR_GENERATOR_HPP_
