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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdmr/value.hpp"

namespace qdmr {

struct Column {
  std::string name;
  Datatype type = Datatype::kText;
};

struct ForeignKey {
  std::string column;
  std::string ref_table;
  std::string ref_column;
};

struct Table {
  std::string name;
  std::vector<Column> columns;
  // Empty when the table has no single-column primary key.
  std::string primary_key;
  std::vector<ForeignKey> foreign_keys;

  std::optional<size_t> column_index(std::string_view name) const;
  bool has_primary_key() const { return !primary_key.empty(); }
  std::optional<size_t> primary_key_index() const;
};

// Identifier matching is case-insensitive and ignores spaces and
// underscores, so "School_ID", "school id" and "schoolid" all match.
std::string fold_identifier(std::string_view name);

class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<Table> tables);

  const std::vector<Table>& tables() const { return tables_; }
  std::vector<Table>& tables() { return tables_; }

  // Lookups resolve folded identifiers; ties go to declaration order.
  const Table* find_table(std::string_view name) const;
  std::optional<size_t> table_index(std::string_view name) const;
  const Column* find_column(std::string_view table,
                            std::string_view column) const;

  // Throws InputError when the schema is inconsistent: duplicate names,
  // a primary key or foreign key endpoint that is not a declared column,
  // or a foreign key that does not target the referenced table's key.
  void check() const;

  static Schema from_json(const std::string& json_text);
  std::string to_json() const;

 private:
  std::vector<Table> tables_;
};

}  // namespace qdmr
