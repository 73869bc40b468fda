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

#include "common.hpp"
#include "mcmlab/core/errors.hpp"
#include "mcmlab/mcm/calibration.hpp"
#include "mcmlab/tomo/fidelity.hpp"
#include "mcmlab/tomo/tomography.hpp"

namespace mcmlab::exp {

using core::Qubit;
using detail::us;

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> kNames{"z-fpga", "z-echo",  "x-fpga",
                                               "x-echo", "ff-fpga", "ff-inlayer"};
  return kNames;
}

TomographyScenario make_scenario(const std::string& name, const device::DeviceConfig& cfg) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigError("unknown tomography scenario '" + name + "'");
  }
  const bool feedforward = name.rfind("ff-", 0) == 0;
  TomographyScenario sc;
  sc.name = name;
  mcm::McmSpec& s = sc.spec;
  s.basis = name[0] == 'z' ? mcm::Basis::Z : mcm::Basis::X;
  s.t_m = 10e-6;
  s.data_qubit = Qubit::D1;
  s.decoupled_qubits = {Qubit::D1};

  sc.target_spec = s;
  sc.target_spec.mode = mcm::ReadoutMode::PhaseAccumulationFpgaCorrected;
  sc.target_spec.policy = mcm::FpgaPhase{0.0, feedforward ? core::kPi : 0.0};

  if (name.find("echo") != std::string::npos) {
    s.mode = mcm::ReadoutMode::PhaseEchoed;
  } else if (name == "ff-inlayer") {
    s.mode = mcm::ReadoutMode::PhaseAccumulation;
    s.t_m = mcm::solve_inlayer_read_time(Qubit::D1, core::kPi, cfg);
    s.policy = mcm::InLayerCds{core::wrap_phase(-mcm::phase_ledger(s, cfg).at(Qubit::D1).theta_r)};
  } else {
    s.mode = mcm::ReadoutMode::PhaseAccumulationFpgaCorrected;
    s.policy = mcm::FpgaPhase{};
    const mcm::PhiPair phi = feedforward ? mcm::calibrate_phi_pi(s, cfg) : mcm::calibrate_phi0(s, cfg);
    s.policy = mcm::FpgaPhase{phi.phi_m0, phi.phi_m1};
  }
  s.validate();
  sc.target_spec.validate();
  return sc;
}

core::QuantumInstrument scenario_target(const TomographyScenario& sc,
                                        const device::DeviceConfig& cfg) {
  return mcm::instrument_of_spec(sc.target_spec, mcm::zero_backaction(cfg), mcm::NoiseModel::none());
}

namespace {

Table instrument_table(const std::string& name, const core::QuantumInstrument& inst) {
  Table t;
  t.name = name;
  t.columns = {"outcome", "row"};
  const int n = inst.n_qubits();
  const int dim = inst.maps[0].dim();
  for (int j = 0; j < dim; ++j) t.columns.push_back(core::pauli_label(j, n));
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < dim; ++i) {
      std::vector<Cell> row{std::int64_t{k}, core::pauli_label(i, n)};
      for (int j = 0; j < dim; ++j) row.emplace_back(inst.maps[k].matrix(i, j));
      t.add_row(std::move(row));
    }
  }
  return t;
}

void add_generator_rows(Table& t, const std::string& outcome,
                        const tomo::ErrorGeneratorDecomposition& d) {
  auto identifiable = [&d](const std::string& tag) {
    return std::find(d.unidentifiable.begin(), d.unidentifiable.end(), tag) == d.unidentifiable.end();
  };
  for (const auto& [pauli, v] : d.h) {
    t.add_row({outcome, std::string("H"), pauli, v, std::int64_t{identifiable("H_" + pauli)}});
  }
  for (const auto& [pauli, v] : d.s) {
    t.add_row({outcome, std::string("S"), pauli, v, std::int64_t{identifiable("S_" + pauli)}});
  }
}

}  // namespace

RunResult run_tomography(const device::DeviceConfig& cfg, const TomographyOptions& opts,
                         const RunOptions& run) {
  std::vector<std::string> names;
  if (opts.scenario == "all") {
    names = scenario_names();
  } else {
    make_scenario(opts.scenario, cfg);  // validates the name
    names = {opts.scenario};
  }
  if (opts.counts_path && names.size() != 1) {
    throw ConfigError("--counts needs a single --scenario");
  }
  mcm::NoiseModel noise = opts.noiseless ? mcm::NoiseModel::none() : mcm::NoiseModel::calibrated();
  if (run.readout) noise.classification = *run.readout;

  RunResult result;
  result.name = opts.scenario == "all" ? "tomography" : "tomography_" + opts.scenario;
  Table summary{"tomography_summary",
                {"scenario", "t_m_us", "fidelity", "oracle_fidelity", "max_abs_error_vs_oracle",
                 "pure_readout_error", "dephasing_coefficient", "s_IX", "residual_norm"},
                {}};
  for (const std::string& name : names) {
    const TomographyScenario sc = make_scenario(name, cfg);
    const core::QuantumInstrument target = scenario_target(sc, cfg);
    const core::QuantumInstrument oracle = mcm::instrument_of_spec(sc.spec, cfg, noise);
    tomo::CountTable counts;
    if (opts.counts_path) {
      counts = tomo::read_counts_csv(*opts.counts_path);
    } else if (run.exact()) {
      counts = tomo::exact_probabilities(oracle);
    } else {
      counts = tomo::sample_counts(oracle, *run.shots, run.seed, "tomography/" + name);
    }
    const core::QuantumInstrument est = tomo::reconstruct_instrument(counts);

    const std::string tag = "tomography_" + name;
    Table count_table{tag + "_counts", {"prep_fiducial", "meas_fiducial", "outcome", "count"}, {}};
    for (const tomo::CountRow& r : counts) {
      count_table.add_row({r.prep_fiducial, r.meas_fiducial, std::int64_t{r.outcome}, r.count});
    }
    Table generator{tag + "_generator", {"outcome", "kind", "pauli", "coefficient", "identifiable"},
                    {}};
    const tomo::ErrorGeneratorDecomposition summed = tomo::error_generator(est, target);
    if (opts.scope == tomo::GeneratorScope::OutcomeSummed) {
      add_generator_rows(generator, "all", summed);
    } else {
      const auto per = tomo::error_generator_per_outcome(est, target);
      add_generator_rows(generator, "0", per[0]);
      add_generator_rows(generator, "1", per[1]);
    }
    const double s_ix = summed.s.at("IX");
    summary.add_row({name, us(sc.spec.t_m), tomo::instrument_fidelity(est, target),
                     tomo::instrument_fidelity(oracle, target), est.max_abs_difference(oracle),
                     (1.0 - std::exp(-2.0 * s_ix)) / 2.0, summed.s.at("ZI"), s_ix,
                     summed.residual_norm});
    result.tables.push_back(std::move(count_table));
    result.tables.push_back(instrument_table(tag + "_instrument", est));
    result.tables.push_back(instrument_table(tag + "_target", target));
    result.tables.push_back(std::move(generator));
  }
  result.summary["noise"] = opts.noiseless ? "none" : "calibrated";
  result.summary["classification"] =
      noise.classification == mcm::Classification::Ideal ? "ideal" : "sensor";
  result.summary["generator_scope"] =
      opts.scope == tomo::GeneratorScope::OutcomeSummed ? "outcome-summed" : "per-outcome";
  result.tables.push_back(std::move(summary));
  return result;
}

}  // namespace mcmlab::exp
