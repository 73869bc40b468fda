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

#ifndef MCMLAB_MCM_PROTOCOLS_HPP_
#define MCMLAB_MCM_PROTOCOLS_HPP_

#include <array>
#include <map>
#include <optional>
#include <utility>

#include "mcmlab/core/density_state.hpp"
#include "mcmlab/core/instrument.hpp"
#include "mcmlab/core/rng.hpp"
#include "mcmlab/device/device_model.hpp"
#include "mcmlab/mcm/mcm_spec.hpp"

namespace mcmlab::mcm {

enum class Classification {
  Ideal,          // the controller sees the true parity
  SensorLimited,  // midpoint threshold on the Gaussian sensor signal
};

struct NoiseModel {
  bool decoherence = true;
  Classification classification = Classification::Ideal;
  bool gate_errors = false;

  static NoiseModel none() { return {false, Classification::Ideal, false}; }
  static NoiseModel shots() { return {true, Classification::SensorLimited, false}; }
  static NoiseModel calibrated() { return {true, Classification::SensorLimited, true}; }
};

// Projective ZZ-parity measurement of a qubit pair.
struct ParityResult {
  Parity outcome;
  double probability;
  core::DensityState post_state;
  device::ChargeConfig charge;
};

std::array<double, 2> parity_probabilities(const core::DensityState& state,
                                           std::pair<Qubit, Qubit> pair);
ParityResult psb_parity_measure(const core::DensityState& state, std::pair<Qubit, Qubit> pair,
                                core::ShotStream& rng);

// Single-qubit outcome inferred from a parity outcome, given the partner
// qubit's known state: even -> reference, odd -> flipped reference.
int infer_single_qubit(int outcome_zz, int reference_bit = 1);

// Phases in the frame of each data qubit, that is, with the refocusing pulse
// of decoupled qubits undone. Wrapped into (-pi, pi].
struct QubitPhases {
  double theta_r = 0.0;
  double theta_c = 0.0;
  double theta_m0 = 0.0;
  double theta_m1 = 0.0;
  double phi_m0 = 0.0;
  double phi_m1 = 0.0;
  double theta_t0 = 0.0;
  double theta_t1 = 0.0;
};

struct PhaseLedger {
  std::map<Qubit, QubitPhases> qubits;
  const QubitPhases& at(Qubit q) const { return qubits.at(q); }
};

PhaseLedger phase_ledger(const McmSpec& spec, const device::DeviceConfig& cfg);

struct ShotRecord {
  Parity outcome_true;
  double sensor_signal;
  std::optional<Parity> outcome_classified;
  double probability;               // Born probability of outcome_true
  core::DensityState post_state;       // full register
  core::DensityState final_data_state; // data qubits only
  double timestamp_budget;          // s
};

ShotRecord execute_mcm(const core::DensityState& state, const McmSpec& spec,
                       const device::DeviceConfig& cfg, core::ShotStream& rng,
                       const NoiseModel& noise = NoiseModel::shots());

// Repeated shots on one input. Branch states are propagated once; sample()
// draws from rng exactly as execute_mcm does.
class McmShotSampler {
 public:
  McmShotSampler(const core::DensityState& state, const McmSpec& spec,
                 const device::DeviceConfig& cfg, const NoiseModel& noise = NoiseModel::shots());
  ShotRecord sample(core::ShotStream& rng) const;

 private:
  struct Branch {
    core::DensityState post;
    core::DensityState data;
  };
  McmSpec spec_;
  const device::DeviceConfig* cfg_;
  NoiseModel noise_;
  std::array<double, 2> prob_{};
  // [truth][acted]
  std::array<std::array<std::optional<Branch>, 2>, 2> branch_;
  double budget_ = 0.0;
};

// Branch propagation without sampling. Outcome index = recorded label, which
// differs from the true parity only under SensorLimited classification.
struct ExactMcm {
  std::array<double, 2> probability{};
  std::array<std::optional<core::DensityState>, 2> post_states;
  core::DensityState average;
};

ExactMcm execute_mcm_exact(const core::DensityState& state, const McmSpec& spec,
                           const device::DeviceConfig& cfg,
                           const NoiseModel& noise = NoiseModel{});

// Unnormalized conditional map for recorded label `label`, applied to an
// arbitrary operator on `qubits`.
core::Matrix propagate_mcm(const core::Matrix& op, const std::vector<Qubit>& qubits,
                           const McmSpec& spec, const device::DeviceConfig& cfg,
                           const NoiseModel& noise, Parity label);

// Conditional maps on (data, A1), with A2 held in |1>.
core::QuantumInstrument instrument_of_spec(const McmSpec& spec, const device::DeviceConfig& cfg,
                                           const NoiseModel& noise = NoiseModel{});

// Virtual Z(phi) in the frame of `q`: applied as Z(-phi) when the qubit's
// frame is flipped by a refocusing pulse.
core::DensityState frame_z(const core::DensityState& state, Qubit q, double phi, bool flipped);

// P(|0>) after Z(phi), sqrt(X) and a Z measurement in the qubit frame.
double ramsey_p0(const core::DensityState& state, Qubit q, double phi, bool flipped);

// Conditional two-qubit phase 2 pi J T for the ancilla parity.
double exchange_conditional_phase(double v_j3, double total_time, Parity ancilla_parity,
                                  const device::DeviceConfig& cfg);

core::DensityState exchange_cds_dcz(const core::DensityState& state, double v_j3,
                                    double total_time, Parity ancilla_parity,
                                    const device::DeviceConfig& cfg);

}  // namespace mcmlab::mcm

#endif  // MCMLAB_MCM_PROTOCOLS_HPP_
