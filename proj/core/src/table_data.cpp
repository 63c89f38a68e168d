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

#include "qdmr/table_data.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdmr/errors.hpp"

namespace qdmr {

TableData TableData::empty_for(const Schema& schema) {
  return TableData(std::vector<std::vector<Row>>(schema.tables().size()));
}

const std::vector<Row>& TableData::rows(size_t table_index) const {
  if (table_index >= rows_.size()) throw MisuseError("table index out of range");
  return rows_[table_index];
}

std::vector<Row>& TableData::rows(size_t table_index) {
  if (table_index >= rows_.size()) throw MisuseError("table index out of range");
  return rows_[table_index];
}

void TableData::check(const Schema& schema) const {
  if (rows_.size() != schema.tables().size())
    throw InputError("data has a different table count than the schema");
  for (size_t ti = 0; ti < rows_.size(); ++ti) {
    const Table& table = schema.tables()[ti];
    for (const Row& row : rows_[ti]) {
      if (row.size() != table.columns.size())
        throw InputError("row width mismatch in table " + table.name);
      for (size_t ci = 0; ci < row.size(); ++ci) {
        const Value& v = row[ci];
        if (v.is_null()) continue;
        Datatype t = table.columns[ci].type;
        bool ok = (t == Datatype::kNumber && v.is_number()) ||
                  (t == Datatype::kText && v.is_text()) ||
                  (t == Datatype::kDate && v.is_date());
        if (!ok)
          throw InputError("cell type mismatch in " + table.name + "." +
                           table.columns[ci].name);
      }
    }
  }
}

std::vector<std::vector<std::string>> parse_csv(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  size_t i = 0;
  auto end_field = [&]() {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&]() {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };
  while (i < csv.size()) {
    char c = csv[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < csv.size() && csv[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      field.push_back(c);
      ++i;
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
      ++i;
      continue;
    }
    if (c == ',') {
      end_field();
      ++i;
      continue;
    }
    if (c == '\r') {
      if (i + 1 < csv.size() && csv[i + 1] == '\n') ++i;
      end_row();
      ++i;
      continue;
    }
    if (c == '\n') {
      end_row();
      ++i;
      continue;
    }
    field.push_back(c);
    field_started = true;
    ++i;
  }
  if (in_quotes) throw SyntaxError("unterminated quoted CSV field");
  if (field_started || !row.empty()) end_row();
  return rows;
}

std::string csv_escape(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<Row> parse_csv_table(const Table& table, const std::string& csv) {
  auto raw = parse_csv(csv);
  if (raw.empty()) throw InputError("CSV for " + table.name + " has no header");

  // Header cell -> schema column index.
  std::vector<size_t> header_to_column;
  for (const std::string& name : raw[0]) {
    auto idx = table.column_index(name);
    if (!idx)
      throw InputError("CSV header names unknown column " + name +
                       " for table " + table.name);
    header_to_column.push_back(*idx);
  }

  std::vector<Row> rows;
  for (size_t r = 1; r < raw.size(); ++r) {
    if (raw[r].size() == 1 && raw[r][0].empty()) continue;  // blank line
    if (raw[r].size() != header_to_column.size())
      throw InputError("CSV row width mismatch in table " + table.name);
    Row row(table.columns.size(), Value::null());
    for (size_t f = 0; f < raw[r].size(); ++f) {
      const std::string& cell = raw[r][f];
      if (std::string(trim(cell)).empty()) continue;
      size_t ci = header_to_column[f];
      auto v = parse_as(table.columns[ci].type, cell);
      if (!v)
        throw InputError("cell '" + cell + "' is not a valid " +
                         to_string(table.columns[ci].type) + " in " +
                         table.name + "." + table.columns[ci].name);
      row[ci] = *v;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string write_csv_table(const Table& table, const std::vector<Row>& rows) {
  std::ostringstream out;
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(table.columns[i].name);
  }
  out << '\n';
  for (const Row& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << csv_escape(row[i].lexical());
    }
    out << '\n';
  }
  return out.str();
}

TableData load_csv_dir(const Schema& schema, const std::string& dir) {
  std::vector<std::vector<Row>> rows;
  for (const Table& table : schema.tables()) {
    std::filesystem::path path = std::filesystem::path(dir) / (table.name + ".csv");
    if (!std::filesystem::exists(path)) {
      rows.emplace_back();
      continue;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    rows.push_back(parse_csv_table(table, buf.str()));
  }
  return TableData(std::move(rows));
}

std::pair<Schema, TableData> ensure_key(const Schema& schema,
                                        const TableData& data) {
  std::vector<Table> tables = schema.tables();
  std::vector<std::vector<Row>> rows;
  rows.reserve(tables.size());
  for (size_t ti = 0; ti < tables.size(); ++ti) {
    Table& table = tables[ti];
    std::vector<Row> table_rows =
        ti < data.table_count() ? data.rows(ti) : std::vector<Row>();
    if (!table.has_primary_key()) {
      std::string key_name = "ID";
      for (int suffix = 1; table.column_index(key_name); ++suffix) {
        key_name = "ID_" + std::to_string(suffix);
      }
      table.columns.insert(table.columns.begin(),
                           Column{key_name, Datatype::kNumber});
      table.primary_key = key_name;
      for (size_t r = 0; r < table_rows.size(); ++r) {
        table_rows[r].insert(table_rows[r].begin(),
                             Value::number(static_cast<double>(r + 1)));
      }
    }
    rows.push_back(std::move(table_rows));
  }
  return {Schema(std::move(tables)), TableData(std::move(rows))};
}

}  // namespace qdmr
