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

#include "mcmlab/device/device_model.hpp"

#include <cmath>
#include <string>

#include "mcmlab/core/errors.hpp"
#include "mcmlab/core/linalg.hpp"
#include "mcmlab/core/stats.hpp"

namespace mcmlab::device {

namespace {

constexpr double kTwoPi = 2.0 * core::kPi;

void require_data(Qubit q) {
  if (!core::is_data(q)) {
    throw PreconditionError("qubit " + std::string(core::name(q)) + " is not a data qubit");
  }
}

void require_non_negative(double t, const char* what) {
  if (!(t >= 0.0)) throw PreconditionError(std::string(what) + " must be non-negative");
}

}  // namespace

ChargeConfig charge_config_after(Parity outcome, ParityPair pair) {
  if (outcome == Parity::Even) return kNominalCharge;
  return pair == ParityPair::Ancilla ? kAncillaOddCharge : kDataOddCharge;
}

double charge_phase(Qubit q, double t_m, const DeviceConfig& cfg) {
  require_data(q);
  require_non_negative(t_m, "t_m");
  return kTwoPi * cfg.data(q).f_c * t_m;
}

double stark_frequency(Qubit q, VoltageLevel level, Parity parity, const DeviceConfig& cfg) {
  require_data(q);
  const DataQubitParams& p = cfg.data(q);
  switch (level) {
    case VoltageLevel::RefAncilla:
      return p.f_vref;
    case VoltageLevel::ReadAncilla:
      if (parity == Parity::Even) return p.f_vread_even;
      return p.f_vread_odd.value_or(p.f_vread_even + p.f_c);
    case VoltageLevel::Ctrl:
      break;
  }
  throw PreconditionError("the control level has no constant Stark frequency");
}

double stark_phase(Qubit q, VoltageLevel level, double duration, Parity parity,
                   const DeviceConfig& cfg) {
  require_data(q);
  require_non_negative(duration, "duration");
  if (level == VoltageLevel::Ctrl) {
    const DataQubitParams& p = cfg.data(q);
    return p.g_a * duration + p.g_b * duration * duration;
  }
  return kTwoPi * stark_frequency(q, level, parity, cfg) * duration;
}

double dephasing_envelope(Qubit q, double t, EnvelopeMode mode, const DeviceConfig& cfg) {
  require_data(q);
  require_non_negative(t, "t");
  const DataQubitParams& p = cfg.data(q);
  const double t2 = mode == EnvelopeMode::Hahn ? p.t2_hahn : p.t2_star;
  const double alpha = mode == EnvelopeMode::Hahn ? cfg.alpha_hahn : cfg.alpha_star;
  return std::exp(-std::pow(t / t2, alpha));
}

double readout_error_prob(double t_m, const DeviceConfig& cfg) {
  if (!(t_m > 0.0)) throw PreconditionError("t_m must be positive");
  return core::gaussian_q(cfg.sensor.delta * std::sqrt(t_m) / (2.0 * cfg.sensor.sigma0));
}

double charge_fidelity(double t_m, const DeviceConfig& cfg) {
  return 1.0 - readout_error_prob(t_m, cfg);
}

double sensor_sigma(double t_m, const DeviceConfig& cfg) {
  if (!(t_m > 0.0)) throw PreconditionError("t_m must be positive");
  return cfg.sensor.sigma0 / std::sqrt(t_m);
}

double sample_sensor_signal(Parity outcome, double t_m, bool sensor_on, const DeviceConfig& cfg,
                            core::ShotStream& rng) {
  const double mu = (sensor_on && outcome == Parity::Odd) ? cfg.sensor.delta : 0.0;
  return rng.normal(mu, sensor_sigma(t_m, cfg));
}

Parity classify_sensor_signal(double signal, const DeviceConfig& cfg) {
  return signal > cfg.sensor.delta / 2.0 ? Parity::Odd : Parity::Even;
}

double exchange_rate(double v_j3, const ChargeConfig& charge, const DeviceConfig& cfg) {
  const ExchangeParams& e = cfg.exchange;
  double j = e.j0 * std::exp((v_j3 - e.v0) / e.vslope);
  if (charge.ancilla_unblocked()) j *= e.dj_charge;
  return j;
}

}  // namespace mcmlab::device
