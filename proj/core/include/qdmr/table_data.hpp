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

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdmr/schema.hpp"
#include "qdmr/value.hpp"

namespace qdmr {

// One row, cell order aligned with the table's column declaration order.
using Row = std::vector<Value>;

// Row contents for every table in a schema, in schema table order.
class TableData {
 public:
  TableData() = default;
  explicit TableData(std::vector<std::vector<Row>> rows_per_table)
      : rows_(std::move(rows_per_table)) {}

  static TableData empty_for(const Schema& schema);

  const std::vector<Row>& rows(size_t table_index) const;
  std::vector<Row>& rows(size_t table_index);
  size_t table_count() const { return rows_.size(); }

  // Checks shape against the schema: one row vector per table, one cell
  // per column, cell kinds matching column types (nulls allowed).
  // Throws InputError on violations.
  void check(const Schema& schema) const;

 private:
  std::vector<std::vector<Row>> rows_;
};

// Parses one RFC-4180 CSV document whose header row names the table's
// columns (any order, folded matching). Cells are typed by the schema:
// empty cells become nulls, and cells that cannot be cast raise InputError.
std::vector<Row> parse_csv_table(const Table& table, const std::string& csv);

std::string write_csv_table(const Table& table, const std::vector<Row>& rows);

// Loads <dir>/<table>.csv for every schema table; missing files are
// treated as empty tables.
TableData load_csv_dir(const Schema& schema, const std::string& dir);

// Low-level RFC-4180 reader: quoted fields, doubled quotes, embedded
// separators and newlines. Returns rows of raw (untyped) strings.
std::vector<std::vector<std::string>> parse_csv(const std::string& csv);
std::string csv_escape(std::string_view field);

// Guarantees every table has a single-column primary key: tables without
// one (or with a composite key) get a synthetic numeric "ID" column,
// prepended and filled with 1-based row ordinals. The synthetic name is
// uniquified against existing columns (ID, ID_1, ID_2, ...).
std::pair<Schema, TableData> ensure_key(const Schema& schema,
                                        const TableData& data);

}  // namespace qdmr
