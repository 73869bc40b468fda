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

// mcm-lab: runs the simulator experiments and writes CSV/JSON panels.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mcmlab/core/errors.hpp"
#include "mcmlab/device/device_config.hpp"
#include "mcmlab/experiments/experiments.hpp"
#include "mcmlab/mcm/protocols.hpp"

namespace {

using namespace mcmlab;

struct Common {
  std::string config;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> shots;
  bool exact = false;
  std::string out = "out";
  std::string format = "csv";
  std::string readout;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "device configuration YAML (defaults if omitted)")
      ->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "RNG seed");
  auto* shots = sub->add_option("--shots", c.shots, "shots per point (sampling mode)")
                    ->check(CLI::PositiveNumber);
  auto* exact = sub->add_flag("--exact", c.exact, "exact-probability mode (default)");
  shots->excludes(exact);
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--readout", c.readout, "classification model: ideal or sensor")
      ->check(CLI::IsMember({"ideal", "sensor"}));
}

std::vector<double> scaled(const std::vector<double>& xs, double factor) {
  std::vector<double> out;
  for (double x : xs) out.push_back(x * factor);
  return out;
}

int run_main(int argc, char** argv) {
  CLI::App app{"Mid-circuit measurement and feedforward simulator for silicon spin qubits"};
  app.require_subcommand(1);
  Common c;

  exp::RamseyOptions ramsey;
  double r_tmin = 1.0, r_tmax = 60.0;
  int r_nt = 60;
  auto* ramsey_cmd = app.add_subcommand("ramsey-mcm", "Ramsey-style MCM visibility sweep");
  add_common(ramsey_cmd, c);
  ramsey_cmd->add_option("--t-min-us", r_tmin, "first read time");
  ramsey_cmd->add_option("--t-max-us", r_tmax, "last read time");
  ramsey_cmd->add_option("--n-t", r_nt, "number of read times")->check(CLI::PositiveNumber);
  ramsey_cmd->add_option("--n-phi", ramsey.n_phi, "phase points per fringe");

  exp::Fig2Options fig2;
  std::string variant = "c";
  double fig2_tm = 20.0;
  auto* fig2_cmd = app.add_subcommand("fig2", "X-basis MCM and feedforward traces");
  add_common(fig2_cmd, c);
  fig2_cmd->add_option("--variant", variant, "b, c, d, e or f")->required();
  fig2_cmd->add_option("--t-m-us", fig2_tm, "read time for variants b-e");
  fig2_cmd->add_option("--n-phi", fig2.n_phi, "input phase points");
  fig2_cmd->add_option("--bins", fig2.histogram_bins, "sensor histogram bins");

  double trade_tmax = 100.0;
  int trade_n = 100;
  auto* trade_cmd = app.add_subcommand("tradeoff", "charge fidelity vs coherence over 2 t_m");
  add_common(trade_cmd, c);
  trade_cmd->add_option("--t-max-us", trade_tmax, "largest total MCM time");
  trade_cmd->add_option("--n", trade_n, "grid points")->check(CLI::PositiveNumber);

  exp::TomographyOptions tomo_opts;
  std::string counts;
  bool per_outcome = false;
  auto* tomo_cmd = app.add_subcommand("tomography", "instrument tomography of the MCM scenarios");
  add_common(tomo_cmd, c);
  std::vector<std::string> scenarios = exp::scenario_names();
  scenarios.push_back("all");
  tomo_cmd->add_option("--scenario", tomo_opts.scenario, "scenario name or all")
      ->check(CLI::IsMember(scenarios));
  tomo_cmd->add_flag("--noiseless", tomo_opts.noiseless, "disable all noise sources");
  tomo_cmd->add_option("--counts", counts, "reconstruct from a counts CSV")
      ->check(CLI::ExistingFile);
  tomo_cmd->add_flag("--per-outcome", per_outcome, "per-outcome generator decomposition");

  exp::StarkOptions stark;
  double stark_tmax = 20.0;
  int stark_nt = 10;
  auto* stark_cmd = app.add_subcommand("stark", "Hahn-probe Stark shift characterization");
  add_common(stark_cmd, c);
  stark_cmd->add_option("--t-max-us", stark_tmax, "largest perturbation time");
  stark_cmd->add_option("--n-t", stark_nt, "perturbation times")->check(CLI::Range(2, 10000));
  stark_cmd->add_option("--n-phi", stark.n_phi, "phase points per fringe");

  exp::ExchangeOptions exch;
  double v_min = -40.0, v_max = 20.0;
  int n_v = 241;
  std::vector<double> times_us{1.0, 2.0, 5.0, 10.0};
  auto* exch_cmd =
      app.add_subcommand("exchange-fingerprint", "exchange-modulated CDS conditional phase");
  add_common(exch_cmd, c);
  exch_cmd->add_option("--v-min-mv", v_min, "lowest J-gate voltage");
  exch_cmd->add_option("--v-max-mv", v_max, "highest J-gate voltage");
  exch_cmd->add_option("--n-v", n_v, "voltage points")->check(CLI::Range(2, 1000000));
  exch_cmd->add_option("--times-us", times_us, "total times")->delimiter(',');

  std::string experiment_path;
  auto* inst_cmd = app.add_subcommand("instrument", "instrument and phase ledger of one MCM spec");
  add_common(inst_cmd, c);
  inst_cmd->add_option("--experiment", experiment_path, "MCM spec YAML")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const device::DeviceConfig cfg =
      c.config.empty() ? device::DeviceConfig::defaults() : device::load_device_config(c.config);
  exp::RunOptions run;
  run.seed = c.seed;
  run.shots = c.shots;
  if (c.readout == "ideal") run.readout = mcm::Classification::Ideal;
  if (c.readout == "sensor") run.readout = mcm::Classification::SensorLimited;

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  exp::RunResult result;
  if (chosen == ramsey_cmd) {
    ramsey.t_m_grid = exp::linspace(r_tmin * 1e-6, r_tmax * 1e-6, r_nt);
    result = exp::run_ramsey_mcm(cfg, ramsey, run);
  } else if (chosen == fig2_cmd) {
    if (variant.size() != 1) throw ConfigError("fig2 variant must be a single letter");
    fig2.variant = variant[0];
    fig2.t_m = fig2_tm * 1e-6;
    result = exp::run_fig2(cfg, fig2, run);
  } else if (chosen == trade_cmd) {
    exp::TradeoffOptions t;
    t.total_time_grid = exp::linspace(trade_tmax * 1e-6 / trade_n, trade_tmax * 1e-6, trade_n);
    result = exp::run_tradeoff(cfg, t);
  } else if (chosen == tomo_cmd) {
    if (!counts.empty()) tomo_opts.counts_path = counts;
    if (per_outcome) tomo_opts.scope = tomo::GeneratorScope::PerOutcome;
    result = exp::run_tomography(cfg, tomo_opts, run);
  } else if (chosen == stark_cmd) {
    stark.t_m_grid = exp::linspace(stark_tmax * 1e-6 / stark_nt, stark_tmax * 1e-6, stark_nt);
    result = exp::run_stark_characterization(cfg, stark, run);
  } else if (chosen == exch_cmd) {
    exch.v_grid = exp::linspace(v_min * 1e-3, v_max * 1e-3, n_v);
    exch.total_time_grid = scaled(times_us, 1e-6);
    result = exp::run_exchange_fingerprint(cfg, exch);
  } else {
    const mcm::McmSpec spec = mcm::load_mcm_spec(experiment_path);
    mcm::NoiseModel noise = mcm::NoiseModel{};
    if (run.readout) noise.classification = *run.readout;
    const core::QuantumInstrument inst = mcm::instrument_of_spec(spec, cfg, noise);
    result.name = "instrument";
    exp::Table t{"instrument", {"outcome", "row"}, {}};
    for (int j = 0; j < 16; ++j) t.columns.push_back(core::pauli_label(j, 2));
    for (int k = 0; k < 2; ++k) {
      for (int i = 0; i < 16; ++i) {
        std::vector<exp::Cell> row{std::int64_t{k}, core::pauli_label(i, 2)};
        for (int j = 0; j < 16; ++j) row.emplace_back(inst.maps[k].matrix(i, j));
        t.add_row(std::move(row));
      }
    }
    exp::Table ledger{"phase_ledger",
                      {"qubit", "theta_r_pi", "theta_c_pi", "theta_m0_pi", "theta_m1_pi",
                       "phi_m0_pi", "phi_m1_pi", "theta_t0_pi", "theta_t1_pi"},
                      {}};
    for (const auto& [q, p] : mcm::phase_ledger(spec, cfg).qubits) {
      ledger.add_row({std::string(core::name(q)), p.theta_r / core::kPi, p.theta_c / core::kPi,
                      p.theta_m0 / core::kPi, p.theta_m1 / core::kPi, p.phi_m0 / core::kPi,
                      p.phi_m1 / core::kPi, p.theta_t0 / core::kPi, p.theta_t1 / core::kPi});
    }
    result.tables.push_back(std::move(t));
    result.tables.push_back(std::move(ledger));
    result.summary["experiment_path"] = experiment_path;
  }

  exp::RunMetadata meta;
  meta.subcommand = name;
  meta.seed = c.seed;
  meta.shots = c.shots;
  meta.config_path = c.config.empty() ? "<defaults>" : c.config;
  meta.config_sha256 = exp::sha256_hex(device::to_yaml(cfg));
  meta.readout = c.readout.empty() ? "default" : c.readout;
  const auto written = exp::write_run(result, meta, c.out,
                                      c.format == "csv" ? exp::Format::Csv : exp::Format::Json);
  for (const auto& p : written) std::cout << p.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const mcmlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const mcmlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
