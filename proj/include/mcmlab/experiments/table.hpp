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

#ifndef MCMLAB_EXPERIMENTS_TABLE_HPP_
#define MCMLAB_EXPERIMENTS_TABLE_HPP_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace mcmlab::exp {

using Cell = std::variant<double, std::int64_t, std::string>;

// One output panel. Column names carry their unit suffix (t_m_us, phase_pi).
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
  nlohmann::ordered_json to_json() const;
  // Column lookup for tests and acceptance checks.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  std::string text(std::size_t row, const std::string& name) const;
};

// Shortest round-trip decimal form.
std::string format_double(double v);

Table parse_csv_table(const std::string& name, const std::string& text);

}  // namespace mcmlab::exp

#endif  // MCMLAB_EXPERIMENTS_TABLE_HPP_
