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

#ifndef MCMLAB_TOMO_TOMOGRAPHY_HPP_
#define MCMLAB_TOMO_TOMOGRAPHY_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mcmlab/core/instrument.hpp"
#include "mcmlab/core/linalg.hpp"

namespace mcmlab::tomo {

using core::QuantumInstrument;

// Two-qubit (data, ancilla) fiducials. Labels are "<data>.<ancilla>" with
// single-qubit parts Z+, Z-, X+, X-, Y+, Y-. Preparations are the 36 product
// eigenstates; measurement effects are the 36 product projectors grouped in 9
// Pauli settings ("X.Z" etc.) of 4 results each.
struct FiducialSet {
  std::vector<std::string> prep_labels;
  std::vector<core::Matrix> preps;
  std::vector<std::string> effect_labels;
  std::vector<core::Matrix> effects;
  std::vector<int> effect_setting;
  std::vector<std::string> setting_labels;

  int prep_index(std::string_view label) const;
  int effect_index(std::string_view label) const;
};

const FiducialSet& standard_fiducials();

// Outcome-tagged tallies. Exact mode stores probabilities in `count`.
struct CountRow {
  std::string prep_fiducial;
  std::string meas_fiducial;
  int outcome = 0;
  double count = 0.0;
};
using CountTable = std::vector<CountRow>;

CountTable exact_probabilities(const QuantumInstrument& inst,
                               const FiducialSet& fiducials = standard_fiducials());

// Multinomial sampling of `shots` repetitions per (preparation, setting).
CountTable sample_counts(const QuantumInstrument& inst, std::uint64_t shots, std::uint64_t seed,
                         std::string_view experiment,
                         const FiducialSet& fiducials = standard_fiducials());

// Linear inversion per outcome, frequencies normalized per (prep, setting).
// Throws PreconditionError on negative or missing counts and NumericalError on
// a rank-deficient fiducial frame.
QuantumInstrument linear_inversion(const CountTable& counts,
                                   const FiducialSet& fiducials = standard_fiducials());

// Nearest PSD Choi matrix in Frobenius norm (eigenvalues clipped at 0).
core::Matrix clip_choi(const core::Matrix& choi);

// Clips each outcome's Choi matrix, then rescales the input side so that the
// summed map is trace preserving.
QuantumInstrument project_cp(const QuantumInstrument& inst);

QuantumInstrument reconstruct_instrument(const CountTable& counts,
                                         const FiducialSet& fiducials = standard_fiducials());

// Columns: prep_fiducial,meas_fiducial,outcome,count.
void write_counts_csv(const std::filesystem::path& path, const CountTable& counts);
CountTable read_counts_csv(const std::filesystem::path& path);

// Columns: outcome,row,<16 Pauli labels in basis order>.
std::string instrument_csv(const QuantumInstrument& inst);
QuantumInstrument parse_instrument_csv(std::string_view text);

}  // namespace mcmlab::tomo

#endif  // MCMLAB_TOMO_TOMOGRAPHY_HPP_
