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

#include "mcmlab/mcm/calibration.hpp"

#include <cmath>
#include <vector>

#include "mcmlab/core/density_state.hpp"
#include "mcmlab/core/errors.hpp"
#include "mcmlab/core/fit.hpp"
#include "mcmlab/core/linalg.hpp"
#include "mcmlab/mcm/protocols.hpp"

namespace mcmlab::mcm {

using core::DensityState;
using device::DeviceConfig;

namespace {

// Azimuth of the data qubit after the MCM with A1 fixed in |a1_bit>.
double ramsey_azimuth(const McmSpec& spec, const DeviceConfig& cfg, int a1_bit, int n_phi) {
  const Qubit q = spec.data_qubit;
  const DensityState input = DensityState::product(
      {{Qubit::A2, core::ket(1)},
       {Qubit::A1, core::ket(a1_bit)},
       {q, core::gates::sqrt_x() * core::ket(1)}});
  const ExactMcm run = execute_mcm_exact(input, spec, cfg, NoiseModel{});
  const bool flipped = spec.is_decoupled(q);
  std::vector<double> phis(n_phi), p0(n_phi);
  for (int i = 0; i < n_phi; ++i) {
    phis[i] = 2.0 * core::kPi * i / n_phi;
    p0[i] = ramsey_p0(run.average, q, phis[i], flipped);
  }
  const core::CosineFit fit = core::fit_cosine(phis, p0);
  if (fit.amplitude < 1e-6) {
    throw NumericalError("calibration fit is degenerate (no Ramsey fringe)");
  }
  // P0 = c + A cos(phi + azimuth).
  return -fit.phase;
}

}  // namespace

DeviceConfig zero_backaction(const DeviceConfig& cfg) {
  DeviceConfig z = cfg;
  for (Qubit q : {Qubit::D1, Qubit::D2}) {
    device::DataQubitParams& p = z.data(q);
    p.f_c = 0.0;
    p.f_vref = 0.0;
    p.f_vread_even = 0.0;
    p.f_vread_odd.reset();
    p.g_a = 0.0;
    p.g_b = 0.0;
  }
  return z;
}

PhiPair calibrate_phi0(const McmSpec& spec, const DeviceConfig& cfg, int n_phi) {
  if (n_phi < 16) throw PreconditionError("calibration needs at least 16 phase points");
  McmSpec cal = spec;
  cal.entangle = false;
  cal.policy = NoFeedforward{};
  if (cal.mode == ReadoutMode::PhaseAccumulationFpgaCorrected) {
    cal.mode = ReadoutMode::PhaseAccumulation;
  }
  const DeviceConfig null_device = zero_backaction(cfg);
  // A2 stays |1>; A1 = |1> gives even parity, A1 = |0> odd.
  const double theta_m0 =
      ramsey_azimuth(cal, cfg, 1, n_phi) - ramsey_azimuth(cal, null_device, 1, n_phi);
  const double theta_m1 =
      ramsey_azimuth(cal, cfg, 0, n_phi) - ramsey_azimuth(cal, null_device, 0, n_phi);
  return {core::wrap_phase(-theta_m0), core::wrap_phase(-theta_m1)};
}

PhiPair calibrate_phi_pi(const McmSpec& spec, const DeviceConfig& cfg, int n_phi) {
  PhiPair p = calibrate_phi0(spec, cfg, n_phi);
  p.phi_m1 = core::wrap_phase(p.phi_m1 + core::kPi);
  return p;
}

double solve_inlayer_read_time(Qubit q, double target_phase, const DeviceConfig& cfg) {
  const double f = std::abs(cfg.data(q).f_c);
  if (f == 0.0) throw PreconditionError("f_c = 0: no charge-driven phase control available");
  const double two_pi = 2.0 * core::kPi;
  double r = std::fmod(target_phase, two_pi);
  if (r < 0.0) r += two_pi;
  if (r < 1e-12) r = two_pi;
  return r / (two_pi * f);
}

}  // namespace mcmlab::mcm
