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

#include "qdmr/schema.hpp"

#include <cctype>
#include <set>

#include <nlohmann/json.hpp>

#include "qdmr/errors.hpp"

namespace qdmr {

std::string fold_identifier(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (c == '_' || c == ' ' || c == '\t') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::optional<size_t> Table::column_index(std::string_view name) const {
  std::string folded = fold_identifier(name);
  for (size_t i = 0; i < columns.size(); ++i) {
    if (fold_identifier(columns[i].name) == folded) return i;
  }
  return std::nullopt;
}

std::optional<size_t> Table::primary_key_index() const {
  if (primary_key.empty()) return std::nullopt;
  return column_index(primary_key);
}

Schema::Schema(std::vector<Table> tables) : tables_(std::move(tables)) {}

const Table* Schema::find_table(std::string_view name) const {
  auto idx = table_index(name);
  return idx ? &tables_[*idx] : nullptr;
}

std::optional<size_t> Schema::table_index(std::string_view name) const {
  std::string folded = fold_identifier(name);
  for (size_t i = 0; i < tables_.size(); ++i) {
    if (fold_identifier(tables_[i].name) == folded) return i;
  }
  return std::nullopt;
}

const Column* Schema::find_column(std::string_view table,
                                  std::string_view column) const {
  const Table* t = find_table(table);
  if (t == nullptr) return nullptr;
  auto idx = t->column_index(column);
  return idx ? &t->columns[*idx] : nullptr;
}

void Schema::check() const {
  std::set<std::string> table_names;
  for (const Table& t : tables_) {
    if (!table_names.insert(fold_identifier(t.name)).second)
      throw InputError("duplicate table name: " + t.name);
    std::set<std::string> column_names;
    for (const Column& c : t.columns) {
      if (!column_names.insert(fold_identifier(c.name)).second)
        throw InputError("duplicate column name: " + t.name + "." + c.name);
    }
    if (!t.primary_key.empty() && !t.column_index(t.primary_key))
      throw InputError("primary key is not a column: " + t.name + "." +
                       t.primary_key);
    for (const ForeignKey& fk : t.foreign_keys) {
      if (!t.column_index(fk.column))
        throw InputError("foreign key source is not a column: " + t.name +
                         "." + fk.column);
      const Table* target = find_table(fk.ref_table);
      if (target == nullptr)
        throw InputError("foreign key targets unknown table: " + fk.ref_table);
      if (!target->column_index(fk.ref_column))
        throw InputError("foreign key targets unknown column: " +
                         fk.ref_table + "." + fk.ref_column);
      // Rows are addressed by primary key, so only key columns can be
      // referenced; anything else would never resolve to a row node.
      if (fold_identifier(fk.ref_column) != fold_identifier(target->primary_key))
        throw InputError("foreign key must target the primary key: " +
                         fk.ref_table + "." + fk.ref_column);
    }
  }
}

namespace {

Datatype datatype_from_string(const std::string& s) {
  std::string folded = to_lower(s);
  if (folded == "number") return Datatype::kNumber;
  if (folded == "text") return Datatype::kText;
  if (folded == "date") return Datatype::kDate;
  throw InputError("unknown column type: " + s);
}

}  // namespace

Schema Schema::from_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("schema is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("tables") || !doc["tables"].is_array())
    throw InputError("schema JSON must be an object with a tables array");

  std::vector<Table> tables;
  for (const auto& jt : doc["tables"]) {
    Table t;
    t.name = jt.at("name").get<std::string>();
    for (const auto& jc : jt.at("columns")) {
      Column c;
      c.name = jc.at("name").get<std::string>();
      c.type = datatype_from_string(jc.at("type").get<std::string>());
      t.columns.push_back(std::move(c));
    }
    if (jt.contains("primary_key") && !jt["primary_key"].is_null()) {
      const auto& pk = jt["primary_key"];
      if (pk.is_string()) {
        t.primary_key = pk.get<std::string>();
      } else if (pk.is_array()) {
        // Composite keys are treated as absent; ensure_key() adds a
        // synthetic single-column key in that case.
        if (pk.size() == 1) t.primary_key = pk[0].get<std::string>();
      } else {
        throw InputError("primary_key must be a string, array or null");
      }
    }
    if (jt.contains("foreign_keys")) {
      for (const auto& jf : jt["foreign_keys"]) {
        ForeignKey fk;
        fk.column = jf.at("column").get<std::string>();
        fk.ref_table = jf.at("ref_table").get<std::string>();
        fk.ref_column = jf.at("ref_column").get<std::string>();
        t.foreign_keys.push_back(std::move(fk));
      }
    }
    tables.push_back(std::move(t));
  }
  Schema schema(std::move(tables));
  schema.check();
  return schema;
}

std::string Schema::to_json() const {
  nlohmann::json doc;
  doc["tables"] = nlohmann::json::array();
  for (const Table& t : tables_) {
    nlohmann::json jt;
    jt["name"] = t.name;
    jt["columns"] = nlohmann::json::array();
    for (const Column& c : t.columns) {
      jt["columns"].push_back({{"name", c.name}, {"type", to_string(c.type)}});
    }
    if (t.primary_key.empty()) {
      jt["primary_key"] = nullptr;
    } else {
      jt["primary_key"] = t.primary_key;
    }
    jt["foreign_keys"] = nlohmann::json::array();
    for (const ForeignKey& fk : t.foreign_keys) {
      jt["foreign_keys"].push_back({{"column", fk.column},
                                    {"ref_table", fk.ref_table},
                                    {"ref_column", fk.ref_column}});
    }
    doc["tables"].push_back(std::move(jt));
  }
  return doc.dump(2);
}

}  // namespace qdmr
