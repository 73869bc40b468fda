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

#ifndef MCMLAB_EXPERIMENTS_EXPERIMENTS_HPP_
#define MCMLAB_EXPERIMENTS_EXPERIMENTS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcmlab/device/device_config.hpp"
#include "mcmlab/experiments/table.hpp"
#include "mcmlab/mcm/protocols.hpp"
#include "mcmlab/tomo/error_generator.hpp"

namespace mcmlab::exp {

// shots == nullopt selects exact-probability mode. readout overrides the
// subcommand's default classification model.
struct RunOptions {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> shots;
  std::optional<mcm::Classification> readout;

  bool exact() const { return !shots.has_value(); }
};

struct RunResult {
  std::string name;
  std::vector<Table> tables;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();

  const Table& table(const std::string& table_name) const;
};

std::vector<double> linspace(double first, double last, int n);

// Ramsey-style MCM: Z(phi), sqrt(X), Z measurement on each data qubit after
// an MCM of the ancilla pair with A1 in |+>.
struct RamseyOptions {
  std::vector<double> t_m_grid = linspace(1e-6, 60e-6, 60);
  int n_phi = 32;
  std::vector<mcm::ReadoutMode> modes{mcm::ReadoutMode::PhaseAccumulation,
                                      mcm::ReadoutMode::PhaseAccumulationFpgaCorrected,
                                      mcm::ReadoutMode::PhaseEchoed};
};
RunResult run_ramsey_mcm(const device::DeviceConfig& cfg, const RamseyOptions& opts,
                         const RunOptions& run);

// X-basis MCM on D1 with an equator input rz(phi)|+>; P(|->) after the MCM.
struct Fig2Options {
  char variant = 'c';
  int n_phi = 32;
  double t_m = 20e-6;  // variants c, d, e; f solves its own read time
  int histogram_bins = 60;
};
RunResult run_fig2(const device::DeviceConfig& cfg, const Fig2Options& opts, const RunOptions& run);
mcm::McmSpec fig2_spec(char variant, double t_m, const device::DeviceConfig& cfg);

struct TradeoffOptions {
  std::vector<double> total_time_grid = linspace(1e-6, 100e-6, 100);
};
RunResult run_tradeoff(const device::DeviceConfig& cfg, const TradeoffOptions& opts);
// Total MCM time 2 t_m at which the D1 Hahn envelope meets the charge fidelity.
double tradeoff_crossing(const device::DeviceConfig& cfg);

// The six instrument-tomography scenarios and their targets.
struct TomographyScenario {
  std::string name;
  mcm::McmSpec spec;
  mcm::McmSpec target_spec;
};
const std::vector<std::string>& scenario_names();
TomographyScenario make_scenario(const std::string& name, const device::DeviceConfig& cfg);
core::QuantumInstrument scenario_target(const TomographyScenario& sc,
                                        const device::DeviceConfig& cfg);

struct TomographyOptions {
  std::string scenario = "all";
  bool noiseless = false;
  std::optional<std::filesystem::path> counts_path;
  tomo::GeneratorScope scope = tomo::GeneratorScope::OutcomeSummed;
};
RunResult run_tomography(const device::DeviceConfig& cfg, const TomographyOptions& opts,
                         const RunOptions& run);

// Hahn probe with the perturbation placed after the refocusing pulse.
struct StarkOptions {
  std::vector<double> t_m_grid = linspace(2e-6, 20e-6, 10);
  int n_phi = 32;
};
RunResult run_stark_characterization(const device::DeviceConfig& cfg, const StarkOptions& opts,
                                     const RunOptions& run);

struct ExchangeOptions {
  std::vector<double> v_grid = linspace(-0.04, 0.02, 241);
  std::vector<double> total_time_grid{1e-6, 2e-6, 5e-6, 10e-6};
};
RunResult run_exchange_fingerprint(const device::DeviceConfig& cfg, const ExchangeOptions& opts);
// V_J3 giving an odd - even conditional-phase difference of pi at total_time,
// searched over v_grid; nullopt when the grid brackets no solution.
std::optional<double> solve_exchange_pi(double total_time, const std::vector<double>& v_grid,
                                        const device::DeviceConfig& cfg);

// Provenance written next to every output set.
struct RunMetadata {
  std::string subcommand;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> shots;
  std::string config_path;
  std::string config_sha256;
  std::string readout;
};

enum class Format { Csv, Json };

std::string sha256_hex(const std::string& bytes);
std::string git_describe();

// Writes one file per table plus <name>.meta.json; returns the written paths.
std::vector<std::filesystem::path> write_run(const RunResult& result, const RunMetadata& meta,
                                             const std::filesystem::path& out_dir, Format format);

}  // namespace mcmlab::exp

#endif  // MCMLAB_EXPERIMENTS_EXPERIMENTS_HPP_
