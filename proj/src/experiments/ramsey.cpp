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

#include <array>
#include <map>

#include "common.hpp"
#include "mcmlab/core/errors.hpp"
#include "mcmlab/core/fit.hpp"
#include "mcmlab/mcm/calibration.hpp"

namespace mcmlab::exp {

using core::DensityState;
using core::Qubit;
using detail::in_pi;
using detail::us;

namespace {

constexpr std::array<Qubit, 2> kData{Qubit::D1, Qubit::D2};

DensityState ramsey_input() {
  const core::Vector equator = core::gates::sqrt_x() * core::ket(1);
  return DensityState::product({{Qubit::A2, core::ket(1)},
                                {Qubit::A1, core::gates::ry(-core::kPi / 2) * core::ket(1)},
                                {Qubit::D1, equator},
                                {Qubit::D2, equator}});
}

mcm::McmSpec ramsey_spec(mcm::ReadoutMode mode, double t_m, const device::DeviceConfig& cfg) {
  mcm::McmSpec spec;
  spec.t_m = t_m;
  spec.mode = mode;
  spec.entangle = false;
  spec.decoupled_qubits = {Qubit::D1, Qubit::D2};
  if (mode == mcm::ReadoutMode::PhaseAccumulationFpgaCorrected) {
    spec.policy = mcm::FpgaPhase{};
    const mcm::PhiPair phi = mcm::calibrate_phi0(spec, cfg);
    spec.policy = mcm::FpgaPhase{phi.phi_m0, phi.phi_m1};
  }
  spec.validate();
  return spec;
}

// Per-qubit P0 accumulators for one (mode, t_m) point.
struct Fringes {
  std::array<std::vector<double>, 2> all;
  std::array<std::array<std::vector<double>, 2>, 2> by_outcome;
  std::array<double, 2> outcome_weight{};
};

}  // namespace

RunResult run_ramsey_mcm(const device::DeviceConfig& cfg, const RamseyOptions& opts,
                         const RunOptions& run) {
  if (opts.n_phi < 16) throw ConfigError("ramsey-mcm needs at least 16 phase points");
  if (opts.t_m_grid.empty()) throw ConfigError("ramsey-mcm needs a non-empty t_m grid");
  const mcm::NoiseModel noise =
      detail::select_noise(run, mcm::NoiseModel{}, mcm::NoiseModel::shots());
  const DensityState input = ramsey_input();
  std::vector<double> phis(opts.n_phi);
  for (int i = 0; i < opts.n_phi; ++i) phis[i] = 2.0 * core::kPi * i / opts.n_phi;

  RunResult result;
  result.name = "ramsey-mcm";
  Table fits{"ramsey_mcm_fits",
             {"mode", "t_m_us", "qubit", "outcome", "outcome_probability", "visibility",
              "phase_pi", "offset", "rms_residual", "hahn_envelope"},
             {}};
  Table traces{"ramsey_mcm_traces", {"mode", "t_m_us", "phi_pi", "p0_D1", "p0_D2"}, {}};

  std::uint64_t point = 0;
  for (mcm::ReadoutMode mode : opts.modes) {
    const std::string mode_name(mcm::name(mode));
    for (double t_m : opts.t_m_grid) {
      const mcm::McmSpec spec = ramsey_spec(mode, t_m, cfg);
      Fringes f;
      for (auto& v : f.all) v.assign(opts.n_phi, 0.0);
      for (auto& per_q : f.by_outcome) {
        for (auto& v : per_q) v.assign(opts.n_phi, 0.0);
      }
      if (run.exact()) {
        const mcm::ExactMcm ex = mcm::execute_mcm_exact(input, spec, cfg, noise);
        for (int k = 0; k < 2; ++k) f.outcome_weight[k] = ex.probability[k];
        for (int qi = 0; qi < 2; ++qi) {
          const bool flipped = spec.is_decoupled(kData[qi]);
          for (int i = 0; i < opts.n_phi; ++i) {
            f.all[qi][i] = mcm::ramsey_p0(ex.average, kData[qi], phis[i], flipped);
            for (int k = 0; k < 2; ++k) {
              if (ex.post_states[k]) {
                f.by_outcome[qi][k][i] =
                    mcm::ramsey_p0(*ex.post_states[k], kData[qi], phis[i], flipped);
              }
            }
          }
        }
      } else {
        const std::uint64_t shots = *run.shots;
        std::array<std::array<std::vector<double>, 2>, 2> counts{};
        std::array<std::vector<double>, 2> n_outcome;
        for (auto& v : n_outcome) v.assign(opts.n_phi, 0.0);
        for (auto& per_q : counts) {
          for (auto& v : per_q) v.assign(opts.n_phi, 0.0);
        }
        for (int i = 0; i < opts.n_phi; ++i) {
          const std::uint32_t stream = core::stream_id("ramsey-mcm", point++);
          const mcm::McmShotSampler sampler(input, spec, cfg, noise);
          for (std::uint64_t s = 0; s < shots; ++s) {
            core::ShotStream rng(run.seed, stream, s);
            const mcm::ShotRecord rec = sampler.sample(rng);
            const int label = static_cast<int>(rec.outcome_classified.value_or(rec.outcome_true));
            n_outcome[label][i] += 1.0;
            for (int qi = 0; qi < 2; ++qi) {
              const double p0 = mcm::ramsey_p0(rec.post_state, kData[qi], phis[i],
                                               spec.is_decoupled(kData[qi]));
              const double hit = rng.uniform() < p0 ? 1.0 : 0.0;  // final Z readout
              f.all[qi][i] += hit;
              counts[qi][label][i] += hit;
            }
          }
          for (int qi = 0; qi < 2; ++qi) {
            f.all[qi][i] /= static_cast<double>(shots);
            for (int k = 0; k < 2; ++k) {
              if (n_outcome[k][i] > 0) f.by_outcome[qi][k][i] = counts[qi][k][i] / n_outcome[k][i];
            }
          }
          for (int k = 0; k < 2; ++k) f.outcome_weight[k] += n_outcome[k][i];
        }
        const double total = f.outcome_weight[0] + f.outcome_weight[1];
        for (double& w : f.outcome_weight) w /= total;
      }

      for (int i = 0; i < opts.n_phi; ++i) {
        traces.add_row({mode_name, us(t_m), in_pi(phis[i]), f.all[0][i], f.all[1][i]});
      }
      for (int qi = 0; qi < 2; ++qi) {
        const Qubit q = kData[qi];
        const double env =
            device::dephasing_envelope(q, 2.0 * t_m, device::EnvelopeMode::Hahn, cfg);
        auto emit = [&](const std::string& outcome, double weight, const std::vector<double>& y) {
          const core::CosineFit fit = core::fit_cosine(phis, y);
          fits.add_row({mode_name, us(t_m), detail::qubit_name(q), outcome, weight,
                        2.0 * fit.amplitude, in_pi(fit.phase), fit.offset, fit.rms_residual, env});
        };
        emit("all", 1.0, f.all[qi]);
        for (int k = 0; k < 2; ++k) {
          if (f.outcome_weight[k] > 0.0) emit(std::to_string(k), f.outcome_weight[k], f.by_outcome[qi][k]);
        }
      }
    }
  }
  result.summary["n_phi"] = opts.n_phi;
  result.summary["noise_decoherence"] = noise.decoherence;
  result.tables.push_back(std::move(fits));
  result.tables.push_back(std::move(traces));
  return result;
}

}  // namespace mcmlab::exp
