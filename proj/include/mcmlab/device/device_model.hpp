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

#ifndef MCMLAB_DEVICE_DEVICE_MODEL_HPP_
#define MCMLAB_DEVICE_DEVICE_MODEL_HPP_

#include "mcmlab/core/qubit.hpp"
#include "mcmlab/core/rng.hpp"
#include "mcmlab/device/device_config.hpp"

namespace mcmlab::device {

using core::Parity;
using core::Qubit;

enum class VoltageLevel { Ctrl, RefAncilla, ReadAncilla };
enum class EnvelopeMode { Ramsey, Hahn };
enum class ParityPair { Ancilla, Data };

// Electron occupancies (N_A2, N_A1, N_D1, N_D2).
struct ChargeConfig {
  int a2 = 3;
  int a1 = 5;
  int d1 = 5;
  int d2 = 3;

  friend bool operator==(const ChargeConfig&, const ChargeConfig&) = default;
  int total() const { return a2 + a1 + d1 + d2; }
  // Ancilla pair in (4,4): the configuration that shifts the data qubits.
  bool ancilla_unblocked() const { return a2 == 4 && a1 == 4; }
};

inline constexpr ChargeConfig kNominalCharge{3, 5, 5, 3};
inline constexpr ChargeConfig kAncillaOddCharge{4, 4, 5, 3};
inline constexpr ChargeConfig kDataOddCharge{3, 5, 4, 4};

ChargeConfig charge_config_after(Parity outcome, ParityPair pair);

double charge_phase(Qubit q, double t_m, const DeviceConfig& cfg);

// Stark frequency (Hz) at a read/reference level; Ctrl has no frequency.
double stark_frequency(Qubit q, VoltageLevel level, Parity parity, const DeviceConfig& cfg);
// Ctrl returns g(duration) = a d + b d^2.
double stark_phase(Qubit q, VoltageLevel level, double duration, Parity parity,
                   const DeviceConfig& cfg);

double dephasing_envelope(Qubit q, double t, EnvelopeMode mode, const DeviceConfig& cfg);

// Misclassification probability of a midpoint-threshold parity readout.
double readout_error_prob(double t_m, const DeviceConfig& cfg);
double charge_fidelity(double t_m, const DeviceConfig& cfg);

double sensor_sigma(double t_m, const DeviceConfig& cfg);
double sample_sensor_signal(Parity outcome, double t_m, bool sensor_on, const DeviceConfig& cfg,
                            core::ShotStream& rng);
Parity classify_sensor_signal(double signal, const DeviceConfig& cfg);

double exchange_rate(double v_j3, const ChargeConfig& charge, const DeviceConfig& cfg);

}  // namespace mcmlab::device

#endif  // MCMLAB_DEVICE_DEVICE_MODEL_HPP_
