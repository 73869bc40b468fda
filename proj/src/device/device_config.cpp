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

#include "mcmlab/device/device_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "mcmlab/core/errors.hpp"

namespace mcmlab::device {

namespace {

using core::Qubit;

struct Field {
  std::string key;
  std::function<double*(DeviceConfig&)> slot;
};

// f_vread_odd is optional and handled separately.
const std::vector<Field>& fields() {
  static const std::vector<Field> kFields = [] {
    std::vector<Field> f;
    for (Qubit q : {Qubit::D1, Qubit::D2}) {
      const std::string s(core::name(q));
      f.push_back({"f_c." + s, [q](DeviceConfig& c) { return &c.data(q).f_c; }});
      f.push_back({"f_vref." + s, [q](DeviceConfig& c) { return &c.data(q).f_vref; }});
      f.push_back(
          {"f_vread_even." + s, [q](DeviceConfig& c) { return &c.data(q).f_vread_even; }});
      f.push_back({"g_vctrl." + s + ".a", [q](DeviceConfig& c) { return &c.data(q).g_a; }});
      f.push_back({"g_vctrl." + s + ".b", [q](DeviceConfig& c) { return &c.data(q).g_b; }});
      f.push_back({"T2_star." + s, [q](DeviceConfig& c) { return &c.data(q).t2_star; }});
      f.push_back({"T2_hahn." + s, [q](DeviceConfig& c) { return &c.data(q).t2_hahn; }});
    }
    f.push_back({"alpha_star", [](DeviceConfig& c) { return &c.alpha_star; }});
    f.push_back({"alpha_hahn", [](DeviceConfig& c) { return &c.alpha_hahn; }});
    f.push_back({"sigma0_sensor", [](DeviceConfig& c) { return &c.sensor.sigma0; }});
    f.push_back({"delta_sensor", [](DeviceConfig& c) { return &c.sensor.delta; }});
    f.push_back({"tau_latch", [](DeviceConfig& c) { return &c.sensor.tau_latch; }});
    f.push_back({"feedforward_latency", [](DeviceConfig& c) { return &c.feedforward_latency; }});
    f.push_back({"exchange.J0", [](DeviceConfig& c) { return &c.exchange.j0; }});
    f.push_back({"exchange.V0", [](DeviceConfig& c) { return &c.exchange.v0; }});
    f.push_back({"exchange.Vslope", [](DeviceConfig& c) { return &c.exchange.vslope; }});
    f.push_back({"exchange.dJ_charge", [](DeviceConfig& c) { return &c.exchange.dj_charge; }});
    f.push_back({"gate_error.cz_overrotation",
                 [](DeviceConfig& c) { return &c.gate_error.cz_overrotation; }});
    f.push_back({"gate_error.sq_depol", [](DeviceConfig& c) { return &c.gate_error.sq_depol; }});
    f.push_back({"gate_error.dcz_crosstalk",
                 [](DeviceConfig& c) { return &c.gate_error.dcz_crosstalk; }});
    return f;
  }();
  return kFields;
}

double scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ConfigError("config key '" + key + "' must be a scalar");
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    throw ConfigError("config key '" + key + "' is not a number: '" + node.Scalar() + "'");
  }
}

std::string format(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

const DataQubitParams& DeviceConfig::data(Qubit q) const {
  if (q == Qubit::D1) return d1;
  if (q == Qubit::D2) return d2;
  throw PreconditionError("qubit " + std::string(core::name(q)) + " is not a data qubit");
}

DataQubitParams& DeviceConfig::data(Qubit q) {
  return const_cast<DataQubitParams&>(static_cast<const DeviceConfig&>(*this).data(q));
}

DeviceConfig DeviceConfig::defaults() {
  DeviceConfig c;
  c.d1 = {-11.8e3, 5.9e3, 9.4e3, -2.9e3, 0.0, 0.0, 20e-6, 76.4e-6};
  c.d2 = {-4.9e3, -5.4e3, -5.3e3, -10.0e3, 0.0, 0.0, 20e-6, 79.4e-6};
  return c;
}

void DeviceConfig::validate() const {
  DeviceConfig copy = *this;
  for (const Field& f : fields()) {
    require(std::isfinite(*f.slot(copy)), "config key '" + f.key + "' must be finite");
  }
  for (Qubit q : {Qubit::D1, Qubit::D2}) {
    const DataQubitParams& p = data(q);
    const std::string s(core::name(q));
    require(p.t2_star > 0 && p.t2_hahn > 0, "T2 times for " + s + " must be positive");
    if (p.f_vread_odd) {
      require(std::isfinite(*p.f_vread_odd), "f_vread_odd." + s + " must be finite");
    }
  }
  require(alpha_star >= 1 && alpha_star <= 3, "alpha_star must lie in [1, 3]");
  require(alpha_hahn >= 1 && alpha_hahn <= 3, "alpha_hahn must lie in [1, 3]");
  require(sensor.sigma0 > 0, "sigma0_sensor must be positive");
  require(sensor.delta > 0, "delta_sensor must be positive");
  require(sensor.tau_latch > 0, "tau_latch must be positive");
  require(feedforward_latency > 0, "feedforward_latency must be positive");
  require(exchange.j0 > 0, "exchange.J0 must be positive");
  require(exchange.vslope != 0, "exchange.Vslope must be non-zero");
  require(exchange.dj_charge > 0, "exchange.dJ_charge must be positive");
  require(gate_error.sq_depol >= 0 && gate_error.sq_depol <= 1,
          "gate_error.sq_depol must lie in [0, 1]");
}

DeviceConfig parse_device_config(std::string_view yaml_text, const DeviceConfig& base) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  DeviceConfig cfg = base;
  if (root.IsNull()) {
    cfg.validate();
    return cfg;
  }
  if (!root.IsMap()) throw ConfigError("config must be a mapping of dotted keys");
  for (const auto& item : root) {
    const std::string key = item.first.as<std::string>();
    const YAML::Node& value = item.second;
    bool known = false;
    for (const Field& f : fields()) {
      if (f.key == key) {
        *f.slot(cfg) = scalar(value, key);
        known = true;
        break;
      }
    }
    for (Qubit q : {Qubit::D1, Qubit::D2}) {
      if (key == "f_vread_odd." + std::string(core::name(q))) {
        known = true;
        if (value.IsNull()) {
          cfg.data(q).f_vread_odd.reset();
        } else {
          cfg.data(q).f_vread_odd = scalar(value, key);
        }
      }
    }
    if (!known) throw ConfigError("unknown config key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

DeviceConfig load_device_config(const std::filesystem::path& path) {
  return parse_device_config(read_text_file(path));
}

std::string to_yaml(const DeviceConfig& cfg) {
  DeviceConfig copy = cfg;
  std::ostringstream os;
  for (const Field& f : fields()) {
    os << f.key << ": " << format(*f.slot(copy)) << "\n";
  }
  for (Qubit q : {Qubit::D1, Qubit::D2}) {
    const auto& odd = cfg.data(q).f_vread_odd;
    os << "f_vread_odd." << core::name(q) << ": " << (odd ? format(*odd) : "~") << "\n";
  }
  return os.str();
}

}  // namespace mcmlab::device
