// Copyright 2026 The qdmr-sparql Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdmr/result_table.hpp"

#include <sstream>

#include "qdmr/errors.hpp"
#include "qdmr/table_data.hpp"

namespace qdmr {

std::string ResultTable::to_csv() const {
  std::ostringstream out;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(columns[i].name);
  }
  out << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << csv_escape(row[i].lexical());
    }
    out << '\n';
  }
  return out.str();
}

ResultTable ResultTable::from_csv(const std::string& csv) {
  auto raw = parse_csv(csv);
  if (raw.empty()) throw InputError("result CSV has no header row");
  ResultTable out;
  for (const std::string& name : raw[0]) {
    out.columns.push_back({name, std::nullopt, std::nullopt});
  }
  for (size_t r = 1; r < raw.size(); ++r) {
    if (raw[r].size() == 1 && raw[r][0].empty() && out.columns.size() != 1)
      continue;
    if (raw[r].size() != out.columns.size())
      throw InputError("result CSV row width mismatch");
    std::vector<Value> row;
    row.reserve(raw[r].size());
    for (const std::string& cell : raw[r]) {
      row.push_back(cell.empty() ? Value::null() : Value::text(cell));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace qdmr
