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

#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "mcmlab/core/errors.hpp"
#include "mcmlab/core/stats.hpp"
#include "mcmlab/mcm/calibration.hpp"

namespace mcmlab::exp {

using core::DensityState;
using core::Parity;
using core::Qubit;
using detail::in_pi;
using detail::us;

namespace {

DensityState fig2_input(double phi) {
  return DensityState::product({{Qubit::A2, core::ket(1)},
                                {Qubit::A1, core::ket(1)},
                                {Qubit::D1, core::gates::rz(phi) * core::ket_plus()},
                                {Qubit::D2, core::ket(1)}});
}

double p_minus(const DensityState& state) {
  const core::Vector m = core::ket_minus();
  return core::expectation(state, m * m.adjoint(), {Qubit::D1});
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

mcm::McmSpec fig2_spec(char variant, double t_m, const device::DeviceConfig& cfg) {
  mcm::McmSpec spec;
  spec.basis = mcm::Basis::X;
  spec.t_m = t_m;
  spec.data_qubit = Qubit::D1;
  spec.decoupled_qubits = {Qubit::D1};
  switch (variant) {
    case 'c':
    case 'e': {
      spec.mode = mcm::ReadoutMode::PhaseAccumulationFpgaCorrected;
      spec.policy = mcm::FpgaPhase{};
      const mcm::PhiPair phi =
          variant == 'c' ? mcm::calibrate_phi0(spec, cfg) : mcm::calibrate_phi_pi(spec, cfg);
      spec.policy = mcm::FpgaPhase{phi.phi_m0, phi.phi_m1};
      break;
    }
    case 'd':
      spec.mode = mcm::ReadoutMode::PhaseEchoed;
      break;
    case 'f': {
      spec.mode = mcm::ReadoutMode::PhaseAccumulation;
      spec.sensor_on = false;
      spec.t_m = mcm::solve_inlayer_read_time(Qubit::D1, core::kPi, cfg);
      const double theta_r = mcm::phase_ledger(spec, cfg).at(Qubit::D1).theta_r;
      spec.policy = mcm::InLayerCds{core::wrap_phase(-theta_r)};
      break;
    }
    default:
      throw ConfigError(std::string("fig2 variant must be one of b, c, d, e, f (got '") + variant +
                        "')");
  }
  spec.validate();
  return spec;
}

RunResult run_fig2(const device::DeviceConfig& cfg, const Fig2Options& opts, const RunOptions& run) {
  if (opts.n_phi < 16) throw ConfigError("fig2 needs at least 16 phase points");
  if (opts.histogram_bins < 2) throw ConfigError("fig2 needs at least 2 histogram bins");
  const char v = opts.variant;
  const bool bypass = v == 'b';
  const mcm::McmSpec spec = bypass ? mcm::McmSpec{} : fig2_spec(v, opts.t_m, cfg);
  const double t_m = bypass ? opts.t_m : spec.t_m;
  const bool sensor_on = bypass || spec.sensor_on;
  const mcm::NoiseModel noise =
      detail::select_noise(run, mcm::NoiseModel{}, mcm::NoiseModel::shots());
  const double env =
      bypass ? 1.0
             : device::dephasing_envelope(Qubit::D1, 2.0 * t_m, device::EnvelopeMode::Hahn, cfg);
  const double sigma = device::sensor_sigma(t_m, cfg);
  const double delta = cfg.sensor.delta;

  const std::string tag = std::string("fig2_") + v;
  Table trace{tag + "_trace", {"phi_pi", "p_minus", "p_minus_normalized", "p_a1_zero"}, {}};
  Table hist{tag + "_histogram", {"signal_lo", "signal_hi", "fraction"}, {}};
  const double lo = -4.0 * sigma, hi = delta + 4.0 * sigma;
  const double width = (hi - lo) / opts.histogram_bins;
  std::vector<double> hist_mass(opts.histogram_bins, 0.0);
  auto add_signal_mass = [&](double weight, double mean) {
    for (int b = 0; b < opts.histogram_bins; ++b) {
      const double a = lo + b * width;
      hist_mass[b] += weight * (normal_cdf((a + width - mean) / sigma) - normal_cdf((a - mean) / sigma));
    }
  };
  std::vector<double> signals, truths;
  std::vector<double> pm_values;
  const std::string experiment = "fig2-" + std::string(1, v);

  for (int i = 0; i < opts.n_phi; ++i) {
    const double phi = 2.0 * core::kPi * i / opts.n_phi;
    const DensityState input = fig2_input(phi);
    double pm = 0.0, pa1 = 0.0;
    if (bypass) {
      // MCM switched off: the D1 readout itself is the histogrammed signal.
      pm = p_minus(input);
      if (run.exact()) {
        add_signal_mass(pm, delta);
        add_signal_mass(1.0 - pm, 0.0);
      } else {
        const std::uint32_t stream = core::stream_id(experiment, static_cast<std::uint64_t>(i));
        double minus_reads = 0.0;
        for (std::uint64_t s = 0; s < *run.shots; ++s) {
          core::ShotStream rng(run.seed, stream, s);
          const Parity out = rng.uniform() < pm ? Parity::Odd : Parity::Even;
          signals.push_back(device::sample_sensor_signal(out, t_m, true, cfg, rng));
          truths.push_back(out == Parity::Odd ? 1.0 : 0.0);
          if (out == Parity::Odd) minus_reads += 1.0;
        }
        pm = minus_reads / static_cast<double>(*run.shots);
      }
    } else if (run.exact()) {
      const mcm::ExactMcm ex = mcm::execute_mcm_exact(input, spec, cfg, noise);
      pm = p_minus(ex.average);
      mcm::NoiseModel ideal = noise;
      ideal.classification = mcm::Classification::Ideal;
      const mcm::ExactMcm truth = noise.classification == mcm::Classification::Ideal
                                      ? ex
                                      : mcm::execute_mcm_exact(input, spec, cfg, ideal);
      const double odd_mean = sensor_on ? delta : 0.0;
      add_signal_mass(truth.probability[0], 0.0);
      add_signal_mass(truth.probability[1], odd_mean);
      pa1 = sensor_on ? ex.probability[1] : core::gaussian_q(delta / (2.0 * sigma));
    } else {
      const std::uint32_t stream = core::stream_id(experiment, static_cast<std::uint64_t>(i));
      double odd_reads = 0.0;
      const mcm::McmShotSampler sampler(input, spec, cfg, noise);
      for (std::uint64_t s = 0; s < *run.shots; ++s) {
        core::ShotStream rng(run.seed, stream, s);
        const mcm::ShotRecord rec = sampler.sample(rng);
        if (rng.uniform() < p_minus(rec.post_state)) pm += 1.0;  // final X readout
        if (device::classify_sensor_signal(rec.sensor_signal, cfg) == Parity::Odd) odd_reads += 1.0;
        signals.push_back(rec.sensor_signal);
        truths.push_back(rec.outcome_true == Parity::Odd ? 1.0 : 0.0);
      }
      pm /= static_cast<double>(*run.shots);
      pa1 = odd_reads / static_cast<double>(*run.shots);
    }
    pm_values.push_back(pm);
    trace.add_row({in_pi(phi), pm, 0.5 + (pm - 0.5) / env, pa1});
  }

  if (run.exact()) {
    for (double& m : hist_mass) m /= opts.n_phi;
  } else {
    for (double s : signals) {
      const int b = static_cast<int>(std::floor((s - lo) / width));
      if (b >= 0 && b < opts.histogram_bins) hist_mass[b] += 1.0;
    }
    for (double& m : hist_mass) m /= static_cast<double>(signals.size());
  }
  for (int b = 0; b < opts.histogram_bins; ++b) {
    hist.add_row({lo + b * width, lo + (b + 1) * width, hist_mass[b]});
  }

  RunResult result;
  result.name = tag;
  auto& s = result.summary;
  s["variant"] = std::string(1, v);
  s["t_m_us"] = us(t_m);
  s["hahn_envelope"] = env;
  if (!bypass) {
    s["mode"] = std::string(mcm::name(spec.mode));
    s["sensor_on"] = spec.sensor_on;
    if (const auto* f = std::get_if<mcm::FpgaPhase>(&spec.policy)) {
      s["phi_m0_pi"] = in_pi(f->phi_m0);
      s["phi_m1_pi"] = in_pi(f->phi_m1);
    } else if (const auto* c = std::get_if<mcm::InLayerCds>(&spec.policy)) {
      s["phi_r_pi"] = in_pi(c->phi_r);
    }
  }
  const auto [mn, mx] = std::minmax_element(pm_values.begin(), pm_values.end());
  s["p_minus_mean"] = core::mean(pm_values);
  s["p_minus_peak_to_peak"] = *mx - *mn;
  if (!run.exact()) s["outcome_signal_correlation"] = core::pearson_correlation(signals, truths);
  result.tables.push_back(std::move(trace));
  result.tables.push_back(std::move(hist));
  return result;
}

}  // namespace mcmlab::exp
