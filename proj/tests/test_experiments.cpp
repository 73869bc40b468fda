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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mcmlab/core/errors.hpp"
#include "mcmlab/core/linalg.hpp"
#include "mcmlab/device/device_config.hpp"
#include "mcmlab/device/device_model.hpp"
#include "mcmlab/experiments/experiments.hpp"
#include "mcmlab/mcm/calibration.hpp"

namespace mcmlab::exp {
namespace {

using core::kPi;
using core::Qubit;
using device::DeviceConfig;
namespace fs = std::filesystem;

const DeviceConfig kCfg = DeviceConfig::defaults();

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mcmlab_test_" + name);
  fs::remove_all(p);
  return p;
}

RunOptions exact() { return RunOptions{}; }
RunOptions shots(std::uint64_t n, std::uint64_t seed = 1) {
  RunOptions r;
  r.shots = n;
  r.seed = seed;
  return r;
}

std::vector<std::size_t> rows_where(const Table& t, const std::string& col, const std::string& v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.text(i, col) == v) out.push_back(i);
  }
  return out;
}

TEST(Table, CsvFormatting) {
  Table t{"demo", {"a", "b", "c"}, {}};
  t.add_row({0.0, std::int64_t{3}, std::string("x")});
  t.add_row({0.1, std::int64_t{-1}, std::string("")});
  t.add_row({std::nan(""), std::int64_t{0}, std::string("y")});
  EXPECT_EQ(t.to_csv(), "a,b,c\n0,3,x\n0.1,-1,\nnan,0,y\n");
  EXPECT_THROW(t.add_row({1.0}), PreconditionError);
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(1e-20), "1e-20");
  EXPECT_EQ(format_double(42.4), "42.4");
  EXPECT_EQ(std::stod(format_double(kPi)), kPi);
}

TEST(Table, JsonAndLookup) {
  Table t{"demo", {"a", "b"}, {}};
  t.add_row({std::nan(""), std::string("s")});
  t.add_row({2.5, std::int64_t{7}});
  const auto j = t.to_json();
  EXPECT_EQ(j["name"], "demo");
  EXPECT_TRUE(j["rows"][0][0].is_null());
  EXPECT_EQ(j["rows"][1][1], 7);
  EXPECT_EQ(t.number(1, "a"), 2.5);
  EXPECT_EQ(t.number(1, "b"), 7.0);
  EXPECT_EQ(t.text(0, "b"), "s");
  EXPECT_THROW(t.column("zz"), PreconditionError);
  EXPECT_THROW(t.number(0, "b"), PreconditionError);
}

TEST(Table, CsvParseRoundTrip) {
  Table t{"demo", {"x", "name"}, {}};
  t.add_row({1.25, std::string("D1")});
  t.add_row({-3e-7, std::string("D2")});
  const Table back = parse_csv_table("demo", t.to_csv());
  EXPECT_EQ(back.columns, t.columns);
  ASSERT_EQ(back.rows.size(), 2u);
  EXPECT_EQ(back.number(1, "x"), -3e-7);
  EXPECT_EQ(back.text(0, "name"), "D1");
  EXPECT_THROW(parse_csv_table("e", ""), ConfigError);
}

TEST(Output, Sha256KnownAnswers) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Output, Linspace) {
  const auto g = linspace(1e-6, 60e-6, 60);
  EXPECT_EQ(g.front(), 1e-6);
  EXPECT_EQ(g.back(), 60e-6);
  EXPECT_NEAR(g[41] * 1e6, 42.0, 1e-12);
  EXPECT_EQ(linspace(3.0, 9.0, 1), std::vector<double>{3.0});
  EXPECT_THROW(linspace(0, 1, 0), PreconditionError);
}

// Every subcommand, small grids, exact mode.
std::map<std::string, std::vector<RunResult>> run_all_subcommands() {
  std::map<std::string, std::vector<RunResult>> out;
  RamseyOptions r;
  r.t_m_grid = {10e-6, 30e-6};
  r.n_phi = 16;
  out["ramsey-mcm"].push_back(run_ramsey_mcm(kCfg, r, exact()));
  const DeviceConfig preset = device::load_device_config(MCMLAB_SOURCE_DIR "/configs/fig2_preset.yaml");
  for (char v : std::string("bcdef")) {
    Fig2Options f;
    f.variant = v;
    f.n_phi = 16;
    out["fig2"].push_back(run_fig2(preset, f, exact()));
  }
  TradeoffOptions t;
  t.total_time_grid = linspace(2e-6, 40e-6, 5);
  out["tradeoff"].push_back(run_tradeoff(kCfg, t));
  TomographyOptions tomo;
  tomo.scenario = "x-echo";
  out["tomography"].push_back(run_tomography(kCfg, tomo, exact()));
  StarkOptions s;
  s.t_m_grid = linspace(4e-6, 12e-6, 3);
  s.n_phi = 16;
  out["stark"].push_back(run_stark_characterization(kCfg, s, exact()));
  ExchangeOptions e;
  e.v_grid = linspace(-0.04, 0.02, 13);
  out["exchange-fingerprint"].push_back(run_exchange_fingerprint(kCfg, e));
  return out;
}

std::string expand(std::string pattern, const std::string& key, const std::string& value) {
  const std::string token = "{" + key + "}";
  for (auto pos = pattern.find(token); pos != std::string::npos; pos = pattern.find(token)) {
    pattern.replace(pos, token.size(), value);
  }
  return pattern;
}

TEST(OutputSchema, EveryTableMatchesTheDocumentedSchema) {
  std::ifstream in(MCMLAB_SOURCE_DIR "/schema/output_schema.json");
  ASSERT_TRUE(in) << "schema file missing";
  const nlohmann::json schema = nlohmann::json::parse(in);
  const auto runs = run_all_subcommands();
  for (const auto& [sub, results] : runs) {
    SCOPED_TRACE(sub);
    ASSERT_TRUE(schema["subcommands"].contains(sub));
    const auto& entry = schema["subcommands"][sub];
    for (const RunResult& res : results) {
      std::string key, value;
      if (entry.contains("variants")) key = "variant", value = res.name.substr(5);
      if (entry.contains("scenarios")) key = "scenario", value = res.name.substr(11);
      EXPECT_EQ(res.name, expand(entry["run"], key, value));
      std::size_t matched = 0;
      for (const auto& [pattern, columns] : entry["tables"].items()) {
        const std::string name = expand(pattern, key, value);
        const Table& t = res.table(name);
        EXPECT_EQ(t.columns, columns.get<std::vector<std::string>>()) << name;
        EXPECT_FALSE(t.rows.empty()) << name;
        ++matched;
      }
      EXPECT_EQ(matched, res.tables.size()) << "undocumented table in " << res.name;

      // Written files carry the same header and a metadata sidecar.
      const fs::path dir = scratch("schema_" + res.name);
      RunMetadata meta{sub, 1, std::nullopt, "<defaults>", "hash", "default"};
      const auto files = write_run(res, meta, dir, Format::Csv);
      ASSERT_EQ(files.size(), res.tables.size() + 1);
      for (const Table& t : res.tables) {
        const Table back = parse_csv_table(t.name, slurp(dir / (t.name + ".csv")));
        EXPECT_EQ(back.columns, t.columns);
        EXPECT_EQ(back.rows.size(), t.rows.size());
      }
      const std::string meta_name = expand(schema["metadata_file"], "run", res.name);
      const auto j = nlohmann::ordered_json::parse(slurp(dir / meta_name));
      std::vector<std::string> keys;
      for (const auto& [k, v] : j.items()) keys.push_back(k);
      EXPECT_EQ(keys, schema["metadata_keys"].get<std::vector<std::string>>());
      EXPECT_EQ(j["files"].size(), res.tables.size());
      fs::remove_all(dir);
    }
  }
}

TEST(OutputSchema, JsonFormatMirrorsCsv) {
  TradeoffOptions t;
  t.total_time_grid = {10e-6, 20e-6};
  const RunResult res = run_tradeoff(kCfg, t);
  const fs::path dir = scratch("json");
  write_run(res, {"tradeoff", 1, std::nullopt, "p", "h", "default"}, dir, Format::Json);
  const auto j = nlohmann::json::parse(slurp(dir / "tradeoff.json"));
  EXPECT_EQ(j["columns"].get<std::vector<std::string>>(), res.tables[0].columns);
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][1][0].get<double>(), 20.0);
  fs::remove_all(dir);
}

TEST(RamseyMcm, VisibilityLawsInExactMode) {
  RamseyOptions r;
  const double t_pi = mcm::solve_inlayer_read_time(Qubit::D1, kPi, kCfg);
  r.t_m_grid = {5e-6, 20e-6, t_pi, 55e-6};
  r.n_phi = 16;
  const RunResult res = run_ramsey_mcm(kCfg, r, exact());
  const Table& fits = res.table("ramsey_mcm_fits");
  int checked = 0;
  for (std::size_t i = 0; i < fits.rows.size(); ++i) {
    if (fits.text(i, "outcome") != "all") continue;
    const Qubit q = core::parse_qubit(fits.text(i, "qubit"));
    const double t = fits.number(i, "t_m_us") * 1e-6;
    const double env = device::dephasing_envelope(q, 2 * t, device::EnvelopeMode::Hahn, kCfg);
    EXPECT_NEAR(fits.number(i, "hahn_envelope"), env, 1e-9);  // t_m printed to 1 fs
    const double v = fits.number(i, "visibility");
    // The FPGA phase corrects the measured qubit (D1) only.
    const bool corrected = fits.text(i, "mode") == "echoed" ||
                           (fits.text(i, "mode") == "fpga-corrected" && q == Qubit::D1);
    if (!corrected) {
      // A1 in an equal superposition: odd weight 1/2.
      const double law = env * std::abs(std::cos(device::charge_phase(q, t, kCfg) / 2));
      EXPECT_NEAR(v, law, 1e-10);
    } else {
      EXPECT_NEAR(v, env, 1e-10);
    }
    ++checked;
  }
  EXPECT_EQ(checked, 3 * 4 * 2);
}

TEST(RamseyMcm, PostSelectedFringesSeparateByChargePhase) {
  RamseyOptions r;
  r.t_m_grid = {15e-6};
  r.n_phi = 24;
  r.modes = {mcm::ReadoutMode::PhaseAccumulation};
  const Table fits = run_ramsey_mcm(kCfg, r, exact()).table("ramsey_mcm_fits");
  std::map<std::string, double> phase, weight, vis;
  for (std::size_t i = 0; i < fits.rows.size(); ++i) {
    if (fits.text(i, "qubit") != "D1") continue;
    phase[fits.text(i, "outcome")] = fits.number(i, "phase_pi") * kPi;
    weight[fits.text(i, "outcome")] = fits.number(i, "outcome_probability");
    vis[fits.text(i, "outcome")] = fits.number(i, "visibility");
  }
  EXPECT_NEAR(weight["0"], 0.5, 1e-12);
  EXPECT_NEAR(weight["1"], 0.5, 1e-12);
  const double env = device::dephasing_envelope(Qubit::D1, 30e-6, device::EnvelopeMode::Hahn, kCfg);
  EXPECT_NEAR(vis["0"], env, 1e-10);
  EXPECT_NEAR(vis["1"], env, 1e-10);
  const double theta_c = device::charge_phase(Qubit::D1, 15e-6, kCfg);
  EXPECT_NEAR(std::abs(core::wrap_phase(phase["1"] - phase["0"])), std::abs(core::wrap_phase(theta_c)),
              1e-9);
}

TEST(RamseyMcm, ModesCoincideWithoutChargeShift) {
  DeviceConfig c = kCfg;
  c.d1.f_c = 0.0;
  c.d2.f_c = 0.0;
  c.d1.f_vread_odd.reset();
  c.d2.f_vread_odd.reset();
  RamseyOptions r;
  r.t_m_grid = {8e-6, 40e-6};
  r.n_phi = 16;
  const Table fits = run_ramsey_mcm(c, r, exact()).table("ramsey_mcm_fits");
  std::map<std::string, std::vector<double>> by_mode;
  for (std::size_t i = 0; i < fits.rows.size(); ++i) {
    if (fits.text(i, "outcome") == "all") {
      by_mode[fits.text(i, "mode")].push_back(fits.number(i, "visibility"));
    }
  }
  ASSERT_EQ(by_mode.size(), 3u);
  for (std::size_t i = 0; i < by_mode["echoed"].size(); ++i) {
    EXPECT_NEAR(by_mode["accumulation"][i], by_mode["echoed"][i], 1e-10);
    EXPECT_NEAR(by_mode["fpga-corrected"][i], by_mode["echoed"][i], 1e-10);
  }
}

TEST(RamseyMcm, RejectsBadOptions) {
  RamseyOptions r;
  r.n_phi = 8;
  EXPECT_THROW(run_ramsey_mcm(kCfg, r, exact()), ConfigError);
  r.n_phi = 16;
  r.t_m_grid.clear();
  EXPECT_THROW(run_ramsey_mcm(kCfg, r, exact()), ConfigError);
}

TEST(Fig2, VariantTraces) {
  const DeviceConfig preset = device::load_device_config(MCMLAB_SOURCE_DIR "/configs/fig2_preset.yaml");
  Fig2Options f;
  f.n_phi = 16;
  f.variant = 'b';
  const Table b = run_fig2(preset, f, exact()).table("fig2_b_trace");
  for (std::size_t i = 0; i < b.rows.size(); ++i) {
    const double phi = b.number(i, "phi_pi") * kPi;
    EXPECT_NEAR(b.number(i, "p_minus"), (1 - std::cos(phi)) / 2, 1e-12);
  }
  f.variant = 'e';
  const RunResult e = run_fig2(preset, f, exact());
  const double env = device::dephasing_envelope(Qubit::D1, 40e-6, device::EnvelopeMode::Hahn, preset);
  EXPECT_LT(e.summary["p_minus_peak_to_peak"].get<double>(), 1e-8);
  EXPECT_NEAR(e.summary["p_minus_mean"].get<double>(), (1 + env) / 2, 1e-8);
  const Table et = e.table("fig2_e_trace");
  for (std::size_t i = 0; i < et.rows.size(); ++i) {
    EXPECT_NEAR(et.number(i, "p_minus_normalized"), 1.0, 1e-8);
  }
  f.variant = 'c';
  const RunResult c = run_fig2(preset, f, exact());
  // Corrected MCM keeps the X-basis readout: P(-) follows the input.
  EXPECT_GT(c.summary["p_minus_peak_to_peak"].get<double>(), 0.5);
  f.variant = 'f';
  const RunResult ff = run_fig2(preset, f, exact());
  EXPECT_LT(ff.summary["p_minus_peak_to_peak"].get<double>(), 1e-8);
  EXPECT_FALSE(ff.summary["sensor_on"].get<bool>());
  // Unimodal histogram: one Gaussian centred on the even level.
  const Table h = ff.table("fig2_f_histogram");
  double mass = 0;
  std::size_t peak = 0;
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    mass += h.number(i, "fraction");
    if (h.number(i, "fraction") > h.number(peak, "fraction")) peak = i;
  }
  EXPECT_NEAR(mass, 1.0, 1e-4);  // tails beyond the plotted range
  EXPECT_LT(std::abs(h.number(peak, "signal_lo")), 0.1);
  for (std::size_t i = 1; i < h.rows.size(); ++i) {
    if (i <= peak) EXPECT_GE(h.number(i, "fraction"), h.number(i - 1, "fraction"));
    else EXPECT_LE(h.number(i, "fraction"), h.number(i - 1, "fraction"));
  }
  f.variant = 'q';
  EXPECT_THROW(run_fig2(preset, f, exact()), ConfigError);
}

TEST(Fig2, SensorOffSignalsCarryNoOutcome) {
  const DeviceConfig preset = device::load_device_config(MCMLAB_SOURCE_DIR "/configs/fig2_preset.yaml");
  Fig2Options f;
  f.variant = 'f';
  f.n_phi = 16;
  const RunResult r = run_fig2(preset, f, shots(500));
  EXPECT_LT(std::abs(r.summary["outcome_signal_correlation"].get<double>()), 0.03);
  // Sampled X readout around the stabilized value.
  const double t = r.summary["t_m_us"].get<double>() * 1e-6;
  const double p =
      (1 + device::dephasing_envelope(Qubit::D1, 2 * t, device::EnvelopeMode::Hahn, preset)) / 2;
  EXPECT_NEAR(r.summary["p_minus_mean"].get<double>(), p, 4 * std::sqrt(p * (1 - p) / (500 * 16)));
  f.variant = 'd';
  const RunResult d = run_fig2(preset, f, shots(500));
  EXPECT_GT(d.summary["outcome_signal_correlation"].get<double>(), 0.9);
}

TEST(Tradeoff, CurvesAndCrossing) {
  TradeoffOptions t;
  const Table tab = run_tradeoff(kCfg, t).table("tradeoff");
  for (std::size_t i = 1; i < tab.rows.size(); ++i) {
    EXPECT_GE(tab.number(i, "charge_fidelity"), tab.number(i - 1, "charge_fidelity"));
    EXPECT_LT(tab.number(i, "hahn_D1"), tab.number(i - 1, "hahn_D1"));
    EXPECT_LT(tab.number(i, "ramsey_D2"), tab.number(i - 1, "ramsey_D2"));
    EXPECT_LT(tab.number(i, "ramsey_D1"), tab.number(i, "hahn_D1"));
  }
  const double x = tradeoff_crossing(kCfg);
  EXPECT_NEAR(x, 20e-6, 2e-6);
  const double hahn = device::dephasing_envelope(Qubit::D1, x, device::EnvelopeMode::Hahn, kCfg);
  EXPECT_NEAR(hahn, device::charge_fidelity(x / 2, kCfg), 1e-9);
}

TEST(Tomography, ExactModeMatchesOracleForAllScenarios) {
  const RunResult r = run_tomography(kCfg, {}, exact());
  const Table& s = r.table("tomography_summary");
  ASSERT_EQ(s.rows.size(), 6u);
  std::map<std::string, double> fid;
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    EXPECT_LT(s.number(i, "max_abs_error_vs_oracle"), 1e-8) << s.text(i, "scenario");
    EXPECT_NEAR(s.number(i, "fidelity"), s.number(i, "oracle_fidelity"), 1e-8);
    fid[s.text(i, "scenario")] = s.number(i, "fidelity");
  }
  EXPECT_GT(fid["ff-fpga"], fid["ff-inlayer"]);
  EXPECT_LT(std::abs(fid["z-echo"] - fid["z-fpga"]), 0.02);
  EXPECT_LT(std::abs(fid["x-echo"] - fid["x-fpga"]), 0.02);
  for (const auto& [name, f] : fid) {
    EXPECT_GT(f, 0.5) << name;
    EXPECT_LT(f, 1.0) << name;
  }
}

TEST(Tomography, NoiselessScenariosHaveUnitFidelity) {
  TomographyOptions o;
  o.noiseless = true;
  const Table s = run_tomography(kCfg, o, exact()).table("tomography_summary");
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    EXPECT_NEAR(s.number(i, "fidelity"), 1.0, 1e-10) << s.text(i, "scenario");
    EXPECT_NEAR(s.number(i, "oracle_fidelity"), 1.0, 1e-10);
  }
}

TEST(Tomography, CountsFileReproducesRun) {
  TomographyOptions o;
  o.scenario = "z-fpga";
  const RunResult a = run_tomography(kCfg, o, shots(200, 4));
  const fs::path dir = scratch("counts");
  write_run(a, {"tomography", 4, 200, "p", "h", "default"}, dir, Format::Csv);
  o.counts_path = dir / "tomography_z-fpga_counts.csv";
  const RunResult b = run_tomography(kCfg, o, exact());
  EXPECT_EQ(a.table("tomography_z-fpga_instrument").to_csv(),
            b.table("tomography_z-fpga_instrument").to_csv());
  o.scenario = "all";
  EXPECT_THROW(run_tomography(kCfg, o, exact()), ConfigError);
  o.scenario = "y-fpga";
  o.counts_path.reset();
  EXPECT_THROW(run_tomography(kCfg, o, exact()), ConfigError);
  fs::remove_all(dir);
}

TEST(Tomography, GeneratorScopes) {
  TomographyOptions o;
  o.scenario = "x-fpga";
  const Table summed = run_tomography(kCfg, o, exact()).table("tomography_x-fpga_generator");
  EXPECT_EQ(summed.rows.size(), 30u);
  EXPECT_EQ(rows_where(summed, "outcome", "all").size(), 30u);
  o.scope = tomo::GeneratorScope::PerOutcome;
  const Table per = run_tomography(kCfg, o, exact()).table("tomography_x-fpga_generator");
  EXPECT_EQ(rows_where(per, "outcome", "0").size(), 6u);
  EXPECT_EQ(rows_where(per, "outcome", "1").size(), 6u);
}

TEST(Stark, RoundTripAllSixShifts) {
  const Table fits = run_stark_characterization(kCfg, {}, exact()).table("stark_fits");
  ASSERT_EQ(fits.rows.size(), 6u);
  const std::vector<double> want{5.9, -5.4, 9.4, -5.3, -2.9, -10.0};
  for (std::size_t i = 0; i < fits.rows.size(); ++i) {
    EXPECT_EQ(fits.number(i, "f_config_khz"), want[i]);
    EXPECT_LT(std::abs(fits.number(i, "f_fit_khz") - want[i]), 0.01 * std::abs(want[i]));
  }
}

TEST(Stark, ZeroShiftGivesZeroSlope) {
  DeviceConfig c = mcm::zero_backaction(kCfg);
  const Table fits = run_stark_characterization(c, {}, exact()).table("stark_fits");
  for (std::size_t i = 0; i < fits.rows.size(); ++i) {
    EXPECT_NEAR(fits.number(i, "f_fit_khz"), 0.0, 1e-9);
  }
  StarkOptions s;
  s.t_m_grid = {1e-6};
  EXPECT_THROW(run_stark_characterization(kCfg, s, exact()), ConfigError);
}

TEST(Exchange, SolutionsMatchClosedForm) {
  const RunResult r = run_exchange_fingerprint(kCfg, {});
  EXPECT_TRUE(r.summary["all_times_solved"].get<bool>());
  const Table& sol = r.table("exchange_solutions");
  ASSERT_EQ(sol.rows.size(), 4u);
  double prev_v = 1e9;
  for (std::size_t i = 0; i < sol.rows.size(); ++i) {
    const double t = sol.number(i, "total_time_us") * 1e-6;
    // pi = 2 pi (dJ - 1) J_even T
    const double j_even = 1.0 / (2 * (kCfg.exchange.dj_charge - 1) * t);
    EXPECT_NEAR(sol.number(i, "j_even_hz"), j_even, 1e-6 * j_even);
    EXPECT_NEAR(sol.number(i, "j_odd_hz"), kCfg.exchange.dj_charge * j_even, 1e-6 * j_even);
    // Longer windows need less exchange.
    EXPECT_LT(sol.number(i, "v_j3_mv"), prev_v);
    prev_v = sol.number(i, "v_j3_mv");
  }
  // Simulated oscillation agrees with the model phase.
  const Table& osc = r.table("exchange_oscillation");
  for (std::size_t i = 0; i < osc.rows.size(); i += 97) {
    const double t = osc.number(i, "total_time_us") * 1e-6;
    const double v = osc.number(i, "v_j3_mv") * 1e-3;
    const core::Parity p = osc.text(i, "parity") == "even" ? core::Parity::Even : core::Parity::Odd;
    const double model = mcm::exchange_conditional_phase(v, t, p, kCfg);
    EXPECT_NEAR(std::abs(core::wrap_phase(osc.number(i, "conditional_phase_pi") * kPi - model)),
                0.0, 1e-9);
  }
}

TEST(Exchange, NoSolutionWithoutChargeDependence) {
  DeviceConfig c = kCfg;
  c.exchange.dj_charge = 1.0;
  const RunResult r = run_exchange_fingerprint(c, {});
  EXPECT_FALSE(r.summary["all_times_solved"].get<bool>());
  for (double t : {1e-6, 2e-6, 5e-6, 10e-6}) {
    EXPECT_FALSE(solve_exchange_pi(t, ExchangeOptions{}.v_grid, c).has_value());
  }
}

std::string run_bytes(const RunResult& r, const std::string& tag) {
  const fs::path dir = scratch(tag);
  const auto files = write_run(r, {"x", 7, 300, "p", "h", "sensor"}, dir, Format::Csv);
  std::string all;
  for (const auto& f : files) all += f.filename().string() + "\n" + slurp(f);
  fs::remove_all(dir);
  return all;
}

TEST(Determinism, ShotRunsAreByteIdentical) {
  RamseyOptions r;
  r.t_m_grid = {12e-6};
  r.n_phi = 16;
  const std::string a = run_bytes(run_ramsey_mcm(kCfg, r, shots(300, 7)), "det_a");
  const std::string b = run_bytes(run_ramsey_mcm(kCfg, r, shots(300, 7)), "det_b");
  const std::string c = run_bytes(run_ramsey_mcm(kCfg, r, shots(300, 8)), "det_c");
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  TomographyOptions o;
  o.scenario = "x-echo";
  EXPECT_EQ(run_bytes(run_tomography(kCfg, o, shots(100, 3)), "det_t1"),
            run_bytes(run_tomography(kCfg, o, shots(100, 3)), "det_t2"));
}

TEST(ShotMode, OutcomeFrequencyConvergesToExact) {
  RamseyOptions r;
  r.t_m_grid = {6e-6};
  r.n_phi = 16;
  r.modes = {mcm::ReadoutMode::PhaseAccumulation};
  RunOptions ex = exact();
  ex.readout = mcm::Classification::SensorLimited;
  RunOptions sh = shots(6250, 5);  // 10^5 shots in total
  sh.readout = mcm::Classification::SensorLimited;
  const Table a = run_ramsey_mcm(kCfg, r, ex).table("ramsey_mcm_fits");
  const Table b = run_ramsey_mcm(kCfg, r, sh).table("ramsey_mcm_fits");
  const auto ia = rows_where(a, "outcome", "1"), ib = rows_where(b, "outcome", "1");
  ASSERT_FALSE(ia.empty());
  ASSERT_FALSE(ib.empty());
  const double p = a.number(ia[0], "outcome_probability");
  const double se = std::sqrt(p * (1 - p) / 1e5);
  EXPECT_NEAR(b.number(ib[0], "outcome_probability"), p, 3 * se);
}

}  // namespace
}  // namespace mcmlab::exp
