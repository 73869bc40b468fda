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

#include <cmath>

#include "common.hpp"
#include "mcmlab/core/errors.hpp"
#include "mcmlab/core/fit.hpp"
#include "mcmlab/mcm/calibration.hpp"

namespace mcmlab::exp {

using core::DensityState;
using core::Parity;
using core::Qubit;
using detail::in_pi;
using detail::us;
using device::EnvelopeMode;
using device::VoltageLevel;

std::vector<double> linspace(double first, double last, int n) {
  if (n < 1) throw PreconditionError("linspace needs at least one point");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = n == 1 ? first : (first * (n - 1 - i) + last * i) / (n - 1);
  }
  return out;
}

// ---- read-time / coherence trade-off

RunResult run_tradeoff(const device::DeviceConfig& cfg, const TradeoffOptions& opts) {
  Table t{"tradeoff",
          {"total_time_us", "t_m_us", "charge_fidelity", "ramsey_D1", "hahn_D1", "ramsey_D2",
           "hahn_D2"},
          {}};
  for (double total : opts.total_time_grid) {
    if (!(total > 0.0)) throw ConfigError("tradeoff times must be positive");
    t.add_row({us(total), us(total / 2.0), device::charge_fidelity(total / 2.0, cfg),
               device::dephasing_envelope(Qubit::D1, total, EnvelopeMode::Ramsey, cfg),
               device::dephasing_envelope(Qubit::D1, total, EnvelopeMode::Hahn, cfg),
               device::dephasing_envelope(Qubit::D2, total, EnvelopeMode::Ramsey, cfg),
               device::dephasing_envelope(Qubit::D2, total, EnvelopeMode::Hahn, cfg)});
  }
  RunResult result;
  result.name = "tradeoff";
  result.summary["crossing_total_time_us"] = us(tradeoff_crossing(cfg));
  result.tables.push_back(std::move(t));
  return result;
}

double tradeoff_crossing(const device::DeviceConfig& cfg) {
  auto gap = [&cfg](double total) {
    return device::dephasing_envelope(Qubit::D1, total, EnvelopeMode::Hahn, cfg) -
           device::charge_fidelity(total / 2.0, cfg);
  };
  double lo = 1e-9, hi = 1e-3;
  if (gap(lo) <= 0.0 || gap(hi) >= 0.0) {
    throw NumericalError("coherence and charge-fidelity curves do not cross");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---- Stark characterization

namespace {

struct StarkProbe {
  Qubit qubit;
  VoltageLevel level;
  Parity parity;
  const char* label;
};

// Hahn probe: equator state, wait t_m, X, perturbation for t_m, then the
// Ramsey readout. A1 sets the ancilla parity seen during the perturbation.
DensityState stark_probe_state(const StarkProbe& p, double t_m, const device::DeviceConfig& cfg) {
  const int a1 = p.parity == Parity::Even ? 1 : 0;
  DensityState s = DensityState::product({{Qubit::A2, core::ket(1)},
                                          {Qubit::A1, core::ket(a1)},
                                          {Qubit::D1, core::ket_plus()},
                                          {Qubit::D2, core::ket_plus()}});
  const auto probs = mcm::parity_probabilities(s, {Qubit::A2, Qubit::A1});
  const Parity seen = probs[1] > 0.5 ? Parity::Odd : Parity::Even;
  for (Qubit q : {Qubit::D1, Qubit::D2}) {
    const double theta = 2.0 * core::kPi * device::stark_frequency(q, p.level, seen, cfg) * t_m;
    s = core::apply_unitary(s, core::gates::rz(-theta) * core::gates::x(), {q});
    const double c = device::dephasing_envelope(q, 2.0 * t_m, EnvelopeMode::Hahn, cfg);
    s = core::apply_channel(s, core::dephasing(c), {q});
  }
  return s;
}

double probe_azimuth(const StarkProbe& p, double t_m, const device::DeviceConfig& cfg, int n_phi,
                     const RunOptions& run, std::uint64_t point) {
  const DensityState s = stark_probe_state(p, t_m, cfg);
  std::vector<double> phis(n_phi), y(n_phi);
  for (int i = 0; i < n_phi; ++i) {
    phis[i] = 2.0 * core::kPi * i / n_phi;
    const double p0 = mcm::ramsey_p0(s, p.qubit, phis[i], true);
    if (run.exact()) {
      y[i] = p0;
    } else {
      const std::uint32_t stream = core::stream_id("stark", point * n_phi + i);
      std::uint64_t hits = 0;
      for (std::uint64_t k = 0; k < *run.shots; ++k) {
        core::ShotStream rng(run.seed, stream, k);
        if (rng.uniform() < p0) ++hits;
      }
      y[i] = static_cast<double>(hits) / static_cast<double>(*run.shots);
    }
  }
  const core::CosineFit fit = core::fit_cosine(phis, y);
  if (fit.amplitude < 1e-6) throw NumericalError("Stark probe fit is degenerate");
  return -fit.phase;
}

}  // namespace

RunResult run_stark_characterization(const device::DeviceConfig& cfg, const StarkOptions& opts,
                                     const RunOptions& run) {
  if (opts.t_m_grid.size() < 2) throw ConfigError("stark needs at least two t_m points");
  if (opts.n_phi < 16) throw ConfigError("stark needs at least 16 phase points");
  const std::vector<StarkProbe> probes{
      {Qubit::D1, VoltageLevel::RefAncilla, Parity::Even, "ref"},
      {Qubit::D2, VoltageLevel::RefAncilla, Parity::Even, "ref"},
      {Qubit::D1, VoltageLevel::ReadAncilla, Parity::Even, "read"},
      {Qubit::D2, VoltageLevel::ReadAncilla, Parity::Even, "read"},
      {Qubit::D1, VoltageLevel::ReadAncilla, Parity::Odd, "read"},
      {Qubit::D2, VoltageLevel::ReadAncilla, Parity::Odd, "read"}};
  const device::DeviceConfig null_device = mcm::zero_backaction(cfg);
  Table phases{"stark_phases", {"qubit", "level", "parity", "t_m_us", "theta_v_pi"}, {}};
  Table fits{"stark_fits",
             {"qubit", "level", "parity", "f_fit_khz", "f_config_khz", "relative_error",
              "intercept_pi", "rms_residual_rad"},
             {}};
  std::uint64_t point = 0;
  for (const StarkProbe& p : probes) {
    std::vector<double> theta;
    for (double t_m : opts.t_m_grid) {
      const double a = probe_azimuth(p, t_m, cfg, opts.n_phi, run, point++);
      const double a0 = probe_azimuth(p, t_m, null_device, opts.n_phi, run, point++);
      theta.push_back(core::wrap_phase(a - a0));
    }
    theta = core::unwrap(theta);
    const core::LinearFit fit = core::fit_linear(opts.t_m_grid, theta);
    const double f_fit = fit.slope / (2.0 * core::kPi);
    const double f_cfg = device::stark_frequency(p.qubit, p.level, p.parity, cfg);
    const std::string q = detail::qubit_name(p.qubit);
    const std::string par(core::name(p.parity));
    for (std::size_t i = 0; i < theta.size(); ++i) {
      phases.add_row({q, std::string(p.label), par, us(opts.t_m_grid[i]), in_pi(theta[i])});
    }
    fits.add_row({q, std::string(p.label), par, f_fit / 1e3, f_cfg / 1e3,
                  f_cfg != 0.0 ? (f_fit - f_cfg) / std::abs(f_cfg) : f_fit, in_pi(fit.intercept),
                  fit.rms_residual});
  }
  RunResult result;
  result.name = "stark";
  result.tables.push_back(std::move(phases));
  result.tables.push_back(std::move(fits));
  return result;
}

// ---- exchange-modulated CDS

std::optional<double> solve_exchange_pi(double total_time, const std::vector<double>& v_grid,
                                        const device::DeviceConfig& cfg) {
  if (!(total_time > 0.0)) throw ConfigError("exchange total time must be positive");
  auto excess = [&](double v) {
    const double d = mcm::exchange_conditional_phase(v, total_time, Parity::Odd, cfg) -
                     mcm::exchange_conditional_phase(v, total_time, Parity::Even, cfg);
    return std::abs(d) - core::kPi;
  };
  for (std::size_t i = 0; i + 1 < v_grid.size(); ++i) {
    double lo = v_grid[i], hi = v_grid[i + 1];
    const double flo = excess(lo), fhi = excess(hi);
    if (flo == 0.0) return lo;
    if ((flo < 0.0) == (fhi < 0.0)) continue;
    for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((excess(mid) < 0.0) == (flo < 0.0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  return std::nullopt;
}

namespace {

// Conditional phase read off the D1 azimuth with D2 in |0> versus |1>; the
// exchange term lowers the D1 azimuth when D2 = |1>.
double simulated_conditional_phase(double v, double total, Parity parity,
                                   const device::DeviceConfig& cfg) {
  double az[2];
  for (int b = 0; b < 2; ++b) {
    const DensityState s = DensityState::product({{Qubit::A2, core::ket(1)},
                                                  {Qubit::A1, core::ket(parity == Parity::Even)},
                                                  {Qubit::D1, core::ket_plus()},
                                                  {Qubit::D2, core::ket(b)}});
    const core::BlochVector bv = core::bloch_vector(mcm::exchange_cds_dcz(s, v, total, parity, cfg),
                                                    Qubit::D1);
    az[b] = std::atan2(bv.y, bv.x);
  }
  return core::wrap_phase(az[0] - az[1]);
}

}  // namespace

RunResult run_exchange_fingerprint(const device::DeviceConfig& cfg, const ExchangeOptions& opts) {
  if (opts.v_grid.size() < 2) throw ConfigError("exchange fingerprint needs a V_J3 grid");
  Table osc{"exchange_oscillation",
            {"total_time_us", "v_j3_mv", "parity", "conditional_phase_pi", "p_flip"},
            {}};
  Table sol{"exchange_solutions",
            {"total_time_us", "found", "v_j3_mv", "j_even_hz", "j_odd_hz"},
            {}};
  std::int64_t found_all = 1;
  for (double total : opts.total_time_grid) {
    for (double v : opts.v_grid) {
      for (Parity p : {Parity::Even, Parity::Odd}) {
        const double phase = simulated_conditional_phase(v, total, p, cfg);
        osc.add_row({us(total), v * 1e3, std::string(core::name(p)), in_pi(phase),
                     (1.0 - std::cos(phase)) / 2.0});
      }
    }
    const std::optional<double> v = solve_exchange_pi(total, opts.v_grid, cfg);
    if (v) {
      sol.add_row({us(total), std::int64_t{1}, *v * 1e3,
                   device::exchange_rate(*v, device::kNominalCharge, cfg),
                   device::exchange_rate(*v, device::kAncillaOddCharge, cfg)});
    } else {
      found_all = 0;
      sol.add_row({us(total), std::int64_t{0}, std::nan(""), std::nan(""), std::nan("")});
    }
  }
  RunResult result;
  result.name = "exchange-fingerprint";
  result.summary["all_times_solved"] = found_all == 1;
  result.tables.push_back(std::move(osc));
  result.tables.push_back(std::move(sol));
  return result;
}

}  // namespace mcmlab::exp
