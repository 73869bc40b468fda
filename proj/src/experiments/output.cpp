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

#include <fstream>

#include <openssl/evp.h>

#include "mcmlab/core/errors.hpp"
#include "mcmlab/experiments/experiments.hpp"

#ifndef MCMLAB_GIT_DESCRIBE
#define MCMLAB_GIT_DESCRIBE "unknown"
#endif

namespace mcmlab::exp {

const Table& RunResult::table(const std::string& table_name) const {
  for (const Table& t : tables) {
    if (t.name == table_name) return t;
  }
  throw PreconditionError("run '" + name + "' has no table '" + table_name + "'");
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw NumericalError("SHA-256 digest failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string git_describe() { return MCMLAB_GIT_DESCRIBE; }

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

std::vector<std::filesystem::path> write_run(const RunResult& result, const RunMetadata& meta,
                                             const std::filesystem::path& out_dir, Format format) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out_dir.string() + "'");
  std::vector<std::filesystem::path> written;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const Table& t : result.tables) {
    const std::filesystem::path path =
        out_dir / (t.name + (format == Format::Csv ? ".csv" : ".json"));
    write_file(path, format == Format::Csv ? t.to_csv() : t.to_json().dump(1) + "\n");
    written.push_back(path);
    files.push_back(path.filename().string());
  }
  nlohmann::ordered_json j;
  j["subcommand"] = meta.subcommand;
  j["seed"] = meta.seed;
  j["mode"] = meta.shots ? "shots" : "exact";
  if (meta.shots) {
    j["shots"] = *meta.shots;
  } else {
    j["shots"] = nullptr;
  }
  j["readout"] = meta.readout;
  j["config_path"] = meta.config_path;
  j["config_sha256"] = meta.config_sha256;
  j["git_describe"] = git_describe();
  j["files"] = files;
  j["summary"] = result.summary;
  const std::filesystem::path meta_path = out_dir / (result.name + ".meta.json");
  write_file(meta_path, j.dump(1) + "\n");
  written.push_back(meta_path);
  return written;
}

}  // namespace mcmlab::exp
