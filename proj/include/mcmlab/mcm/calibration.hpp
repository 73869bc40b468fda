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

#ifndef MCMLAB_MCM_CALIBRATION_HPP_
#define MCMLAB_MCM_CALIBRATION_HPP_

#include <utility>

#include "mcmlab/device/device_config.hpp"
#include "mcmlab/mcm/mcm_spec.hpp"

namespace mcmlab::mcm {

// Same device with every Stark, charge and residual phase set to zero.
device::DeviceConfig zero_backaction(const device::DeviceConfig& cfg);

struct PhiPair {
  double phi_m0 = 0.0;
  double phi_m1 = 0.0;
};

// Simulated calibration: the ancilla is prepared in definite even and odd
// parity, the data qubit phase is fitted from a Ramsey phi sweep (n_phi points)
// against a zero-backaction reference, and the negated phases are returned.
PhiPair calibrate_phi0(const McmSpec& spec, const device::DeviceConfig& cfg, int n_phi = 32);
// calibrate_phi0 with pi added to the odd-outcome correction (wrapped).
PhiPair calibrate_phi_pi(const McmSpec& spec, const device::DeviceConfig& cfg, int n_phi = 32);

// Smallest t_m > 0 with |charge_phase(q, t_m)| = target mod 2 pi.
double solve_inlayer_read_time(Qubit q, double target_phase, const device::DeviceConfig& cfg);

}  // namespace mcmlab::mcm

#endif  // MCMLAB_MCM_CALIBRATION_HPP_
