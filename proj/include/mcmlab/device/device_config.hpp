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

#ifndef MCMLAB_DEVICE_DEVICE_CONFIG_HPP_
#define MCMLAB_DEVICE_DEVICE_CONFIG_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "mcmlab/core/qubit.hpp"

namespace mcmlab::device {

// Per data qubit physics parameters. Frequencies in Hz, times in s.
struct DataQubitParams {
  double f_c = 0.0;           // Larmor shift with the ancilla pair in (4,4)
  double f_vref = 0.0;        // Stark shift at the reference level
  double f_vread_even = 0.0;  // Stark shift at the read level, even branch
  // Directly calibrated odd-branch read shift; falls back to f_vread_even + f_c.
  std::optional<double> f_vread_odd;
  double g_a = 0.0;  // rad/s
  double g_b = 0.0;  // rad/s^2
  double t2_star = 20e-6;
  double t2_hahn = 76.4e-6;
};

struct SensorParams {
  double sigma0 = 1.05e-3;  // signal * sqrt(s)
  double delta = 1.0;       // signal separation between parities
  double tau_latch = 1e-6;  // reserved
};

struct ExchangeParams {
  double j0 = 1e6;      // Hz
  double v0 = 0.0;      // V
  double vslope = 0.01; // V
  double dj_charge = 1.3;
};

struct GateErrorParams {
  double cz_overrotation = 0.05;  // rad, conditional phase error of each CZ
  double sq_depol = 0.002;        // depolarizing probability per CNOT and qubit
  double dcz_crosstalk = 0.1;     // rad, single-qubit phase per exchange half
};

struct DeviceConfig {
  DataQubitParams d1;
  DataQubitParams d2;
  double alpha_star = 2.0;
  double alpha_hahn = 2.0;
  SensorParams sensor;
  double feedforward_latency = 300e-9;
  ExchangeParams exchange;
  GateErrorParams gate_error;

  const DataQubitParams& data(core::Qubit q) const;
  DataQubitParams& data(core::Qubit q);

  // Throws ConfigError on out-of-range values.
  void validate() const;

  static DeviceConfig defaults();
};

// Flat dotted keys (e.g. `f_c.D1`, `exchange.J0`), SI units. Keys not present
// keep the value from `base`; unknown keys raise ConfigError.
DeviceConfig parse_device_config(std::string_view yaml_text,
                                 const DeviceConfig& base = DeviceConfig::defaults());
DeviceConfig load_device_config(const std::filesystem::path& path);

// Emits every key, in schema order.
std::string to_yaml(const DeviceConfig& cfg);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace mcmlab::device

#endif  // MCMLAB_DEVICE_DEVICE_CONFIG_HPP_
