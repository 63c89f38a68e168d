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

#include "testkit/generator.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

#include "qdmr/logical_form.hpp"
#include "qdmr/qdmr_parser.hpp"
#include "testkit/checks.hpp"

namespace qdmr::testkit {

namespace {

using Rng = std::mt19937_64;

int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

template <typename T>
const T& pick_one(Rng& rng, const std::vector<T>& pool) {
  return pool[static_cast<size_t>(pick(rng, 0, static_cast<int>(pool.size()) - 1))];
}

const std::vector<double> kNumberPool = {0, 1,    2,    3,  4,
                                         5, 7,    9,    10, 1.5,
                                         2.25,    -3};
const std::vector<std::string> kTextPool = {"red",  "blue",      "green",
                                            "amber", "coral",    "park lane",
                                            "east", "west"};
const std::vector<std::string> kDatePool = {"2013-05-01", "2014-01-05",
                                            "2014-11-30", "2015-06-15",
                                            "2016-02-09"};

struct GenDb {
  Schema schema;
  TableData data;
  // Foreign-key links as (source table, referenced table) index pairs.
  std::vector<std::pair<size_t, size_t>> links;

  // Non-key, non-foreign-key columns per table.
  std::vector<std::vector<size_t>> data_columns;

  const std::string& table_name(size_t t) const {
    return schema.tables()[t].name;
  }
  std::string column_ref(size_t t, size_t c) const {
    return table_name(t) + "." + schema.tables()[t].columns[c].name;
  }
  Datatype column_type(size_t t, size_t c) const {
    return schema.tables()[t].columns[c].type;
  }
};

Value random_cell(Rng& rng, Datatype type) {
  switch (type) {
    case Datatype::kNumber:
      return Value::number(pick_one(rng, kNumberPool));
    case Datatype::kText:
      return Value::text(pick_one(rng, kTextPool));
    case Datatype::kDate:
      return Value::date(pick_one(rng, kDatePool));
  }
  return Value::null();
}

GenDb make_db(Rng& rng) {
  GenDb db;
  std::vector<Table> tables;

  auto add_column = [](Table& t, const std::string& name, Datatype type) {
    t.columns.push_back({name, type});
  };

  // Table 0 always offers a number and a text data column.
  Table city;
  city.name = "city";
  city.primary_key = "id";
  add_column(city, "id", Datatype::kNumber);
  add_column(city, "size", Datatype::kNumber);
  add_column(city, "color", Datatype::kText);
  if (chance(rng, 0.5)) add_column(city, "opened", Datatype::kDate);
  tables.push_back(city);

  size_t table_count = static_cast<size_t>(pick(rng, 2, 3));
  const char* extra_names[] = {"shop", "crew"};
  const std::vector<std::pair<std::string, Datatype>> column_pool = {
      {"price", Datatype::kNumber}, {"total", Datatype::kNumber},
      {"name", Datatype::kText},    {"kind", Datatype::kText},
      {"born", Datatype::kDate}};

  for (size_t t = 1; t < table_count; ++t) {
    Table table;
    table.name = extra_names[t - 1];
    table.primary_key = "id";
    add_column(table, "id", Datatype::kNumber);
    int extras = pick(rng, 1, 2);
    std::vector<int> chosen;
    for (int e = 0; e < extras; ++e) {
      int idx = pick(rng, 0, static_cast<int>(column_pool.size()) - 1);
      if (std::find(chosen.begin(), chosen.end(), idx) != chosen.end())
        continue;
      chosen.push_back(idx);
      add_column(table, column_pool[idx].first, column_pool[idx].second);
    }
    // Link to a random earlier table.
    size_t target = static_cast<size_t>(pick(rng, 0, static_cast<int>(t) - 1));
    std::string fk_name = tables[target].name + "_id";
    add_column(table, fk_name, Datatype::kNumber);
    table.foreign_keys.push_back({fk_name, tables[target].name, "id"});
    db.links.emplace_back(t, target);
    tables.push_back(table);
  }

  db.schema = Schema(std::move(tables));
  db.schema.check();

  // Rows: occasionally empty, otherwise small.
  std::vector<std::vector<Row>> rows(db.schema.tables().size());
  std::vector<size_t> counts(rows.size());
  for (size_t t = 0; t < rows.size(); ++t) {
    counts[t] = chance(rng, 0.07) ? 0 : static_cast<size_t>(pick(rng, 2, 8));
  }
  for (size_t t = 0; t < rows.size(); ++t) {
    const Table& table = db.schema.tables()[t];
    for (size_t r = 0; r < counts[t]; ++r) {
      Row row;
      for (size_t c = 0; c < table.columns.size(); ++c) {
        const Column& col = table.columns[c];
        if (c == 0) {
          row.push_back(Value::number(static_cast<double>(r + 1)));
          continue;
        }
        bool is_fk = false;
        for (const ForeignKey& fk : table.foreign_keys) {
          if (fk.column == col.name) {
            is_fk = true;
            size_t target = 0;
            for (const auto& [src, ref] : db.links) {
              if (src == t) target = ref;
            }
            if (counts[target] > 0 && chance(rng, 0.8)) {
              row.push_back(Value::number(static_cast<double>(
                  pick(rng, 1, static_cast<int>(counts[target])))));
            } else if (chance(rng, 0.6)) {
              row.push_back(Value::number(static_cast<double>(pick(rng, 91, 93))));
            } else {
              row.push_back(Value::null());
            }
            break;
          }
        }
        if (is_fk) continue;
        if (chance(rng, 0.12)) {
          row.push_back(Value::null());
        } else {
          row.push_back(random_cell(rng, col.type));
        }
      }
      rows[t].push_back(std::move(row));
    }
  }
  db.data = TableData(std::move(rows));
  db.data.check(db.schema);

  db.data_columns.resize(db.schema.tables().size());
  for (size_t t = 0; t < db.schema.tables().size(); ++t) {
    const Table& table = db.schema.tables()[t];
    for (size_t c = 1; c < table.columns.size(); ++c) {
      bool is_fk = false;
      for (const ForeignKey& fk : table.foreign_keys) {
        if (fk.column == table.columns[c].name) is_fk = true;
      }
      if (!is_fk) db.data_columns[t].push_back(c);
    }
  }
  return db;
}

// A (table, data column) pair, optionally restricted by type.
std::optional<std::pair<size_t, size_t>> find_column(
    const GenDb& db, Rng& rng, std::optional<Datatype> type) {
  std::vector<std::pair<size_t, size_t>> all;
  for (size_t t = 0; t < db.data_columns.size(); ++t) {
    for (size_t c : db.data_columns[t]) {
      if (!type || db.column_type(t, c) == *type) all.emplace_back(t, c);
    }
  }
  if (all.empty()) return std::nullopt;
  return pick_one(rng, all);
}

// Lexical form for a comparison operand: an existing value of the column
// when possible (and wanted), else a novel value of the column's type.
std::string operand_lexical(const GenDb& db, Rng& rng, size_t t, size_t c) {
  if (chance(rng, 0.65)) {
    std::vector<std::string> present;
    for (const Row& row : db.data.rows(t)) {
      if (!row[c].is_null()) present.push_back(row[c].lexical());
    }
    if (!present.empty()) return pick_one(rng, present);
  }
  switch (db.column_type(t, c)) {
    case Datatype::kNumber:
      return format_number(pick_one(rng, kNumberPool));
    case Datatype::kText:
      return pick_one(rng, kTextPool);
    case Datatype::kDate:
      return pick_one(rng, kDatePool);
  }
  return "0";
}

std::string number_comparator(Rng& rng) {
  static const std::vector<std::string> ops = {"=", "!=", ">", "<", ">=", "<="};
  return pick_one(rng, ops);
}

std::string maybe_distinct(Rng& rng) {
  return chance(rng, 0.25) ? ", distinct" : "";
}

std::string agg_for_type(Rng& rng, Datatype type) {
  if (type == Datatype::kNumber) {
    static const std::vector<std::string> all = {"count", "sum", "avg", "min",
                                                 "max"};
    return pick_one(rng, all);
  }
  static const std::vector<std::string> orderly = {"count", "min", "max"};
  return pick_one(rng, orderly);
}

// Templates. Each returns the decomposition text; prerequisites are
// guaranteed by make_db (two or more linked tables, table 0 typed columns).

std::string t_select_table(const GenDb& db, Rng& rng) {
  size_t t = static_cast<size_t>(pick(rng, 0, static_cast<int>(db.schema.tables().size()) - 1));
  return "#1 SELECT[" + db.table_name(t) + maybe_distinct(rng) + "]";
}

std::string t_select_column(const GenDb& db, Rng& rng) {
  auto col = find_column(db, rng, std::nullopt);
  return "#1 SELECT[" + db.column_ref(col->first, col->second) +
         maybe_distinct(rng) + "]";
}

std::string t_project_same(const GenDb& db, Rng& rng) {
  auto col = find_column(db, rng, std::nullopt);
  size_t t = col->first;
  return "#1 SELECT[" + db.table_name(t) + "]\n#2 PROJECT[" +
         db.column_ref(t, col->second) + ", #1" + maybe_distinct(rng) + "]";
}

std::string t_project_cross(const GenDb& db, Rng& rng) {
  auto [src, ref] = pick_one(rng, db.links);
  size_t from = src, to = ref;
  if (chance(rng, 0.5)) std::swap(from, to);
  std::string target;
  if (!db.data_columns[to].empty() && chance(rng, 0.7)) {
    target = db.column_ref(to, pick_one(rng, db.data_columns[to]));
  } else {
    target = db.table_name(to);
  }
  return "#1 SELECT[" + db.table_name(from) + "]\n#2 PROJECT[" + target +
         ", #1" + maybe_distinct(rng) + "]";
}

std::string t_comparative_number(const GenDb& db, Rng& rng) {
  auto col = find_column(db, rng, Datatype::kNumber);
  size_t t = col->first, c = col->second;
  std::string val = operand_lexical(db, rng, t, c);
  std::string operand = number_comparator(rng) + val;
  if (chance(rng, 0.3)) operand += "@" + db.column_ref(t, c);
  std::string out = "#1 SELECT[" + db.table_name(t) + "]\n#2 PROJECT[" +
                    db.column_ref(t, c) + ", #1]\n#3 COMPARATIVE[#1, #2, " +
                    operand + "]";
  // Project a sibling column when one exists.
  for (size_t other : db.data_columns[t]) {
    if (other != c) {
      return out + "\n#4 PROJECT[" + db.column_ref(t, other) + ", #3]";
    }
  }
  return out;
}

std::string t_comparative_text(const GenDb& db, Rng& rng) {
  auto col = find_column(db, rng, Datatype::kText);
  size_t t = col->first, c = col->second;
  std::string val = operand_lexical(db, rng, t, c);
  std::string operand;
  if (chance(rng, 0.4)) {
    // Substring filter over a fragment of the value.
    std::string needle = val.size() > 2 ? val.substr(0, 1 + val.size() / 2) : val;
    operand = "like " + needle;
  } else {
    operand = (chance(rng, 0.8) ? "=" : "!=") + val;
  }
  return "#1 SELECT[" + db.table_name(t) + "]\n#2 PROJECT[" +
         db.column_ref(t, c) + ", #1]\n#3 COMPARATIVE[#1, #2, " + operand +
         "]";
}

std::string t_comparative_related(const GenDb& db, Rng& rng) {
  auto [src, ref] = pick_one(rng, db.links);
  size_t from = src, to = ref;
  if (chance(rng, 0.5)) std::swap(from, to);
  return "#1 SELECT[" + db.table_name(from) + "]\n#2 PROJECT[" +
         db.table_name(to) + ", #1]\n#3 COMPARATIVE[#1, #2]";
}

std::string t_comparative_entity(const GenDb& db, Rng& rng) {
  auto [src, ref] = pick_one(rng, db.links);
  size_t from = src, to = ref;
  if (chance(rng, 0.5)) std::swap(from, to);
  std::string operand = db.table_name(to);
  if (!db.data_columns[to].empty() && chance(rng, 0.4)) {
    size_t c = pick_one(rng, db.data_columns[to]);
    operand = operand_lexical(db, rng, to, c) + "@" + db.column_ref(to, c);
  }
  std::string out = "#1 SELECT[" + db.table_name(from) +
                    "]\n#2 COMPARATIVE[#1, #1, " + operand + "]";
  if (!db.data_columns[from].empty()) {
    out += "\n#3 PROJECT[" +
           db.column_ref(from, pick_one(rng, db.data_columns[from])) + ", #2]";
  }
  return out;
}

std::string t_comparative_stepref(const GenDb& db, Rng& rng) {
  auto col = find_column(db, rng, Datatype::kNumber);
  size_t t = col->first, c = col->second;
  static const std::vector<std::string> aggs = {"avg", "min", "max", "sum"};
  static const std::vector<std::string> cmps = {">=", "<=", ">", "<", "="};
  return "#1 SELECT[" + db.table_name(t) + "]\n#2 PROJECT[" +
         db.column_ref(t, c) + ", #1]\n#3 AGGREGATE[" + pick_one(rng, aggs) +
         ", #2]\n#4 COMPARATIVE[#1, #2, " + pick_one(rng, cmps) + "#3]";
}

std::string t_superlative(const GenDb& db, Rng& rng) {
  auto col = find_column(db, rng, Datatype::kNumber);
  size_t t = col->first, c = col->second;
  std::string out = "#1 SELECT[" + db.table_name(t) + "]\n#2 PROJECT[" +
                    db.column_ref(t, c) + ", #1]\n#3 SUPERLATIVE[" +
                    (chance(rng, 0.5) ? "max" : "min") + ", #1, #2]";
  for (size_t other : db.data_columns[t]) {
    if (other != c && chance(rng, 0.6)) {
      return out + "\n#4 PROJECT[" + db.column_ref(t, other) + ", #3]";
    }
  }
  return out;
}

std::string t_superlative_group(const GenDb& db, Rng& rng) {
  auto [src, ref] = pick_one(rng, db.links);
  // Key on a referenced-table column, count source rows per key.
  size_t key_table = ref, value_table = src;
  if (db.data_columns[key_table].empty()) std::swap(key_table, value_table);
  size_t c = pick_one(rng, db.data_columns[key_table]);
  return "#1 SELECT[" + db.column_ref(key_table, c) + "]\n#2 PROJECT[" +
         db.table_name(value_table) + ", #1]\n#3 GROUP[count, #2, #1]\n"
         "#4 SUPERLATIVE[" +
         (chance(rng, 0.5) ? "max" : "min") + ", #1, #3]";
}

std::string t_aggregate(const GenDb& db, Rng& rng) {
  auto col = find_column(db, rng, std::nullopt);
  size_t t = col->first, c = col->second;
  return "#1 SELECT[" + db.column_ref(t, c) + "]\n#2 AGGREGATE[" +
         agg_for_type(rng, db.column_type(t, c)) + ", #1]";
}

std::string t_aggregate_column(const GenDb& db, Rng& rng) {
  auto col = find_column(db, rng, std::nullopt);
  size_t t = col->first, c = col->second;
  return "#1 SELECT[" + db.table_name(t) + "]\n#2 AGGREGATE[" +
         db.column_ref(t, c) + ", #1]";
}

std::string t_group(const GenDb& db, Rng& rng) {
  size_t t = 0;  // two data columns guaranteed
  size_t key = db.data_columns[t][0], val = db.data_columns[t][1];
  if (chance(rng, 0.5)) std::swap(key, val);
  return "#1 SELECT[" + db.column_ref(t, key) + "]\n#2 PROJECT[" +
         db.column_ref(t, val) + ", #1]\n#3 GROUP[" +
         agg_for_type(rng, db.column_type(t, val)) + ", #2, #1]";
}

std::string t_union_vertical(const GenDb& db, Rng& rng) {
  auto col = find_column(db, rng, std::nullopt);
  size_t t = col->first, c = col->second;
  std::string v1 = operand_lexical(db, rng, t, c);
  std::string v2 = operand_lexical(db, rng, t, c);
  std::string out = "#1 SELECT[" + db.table_name(t) + "]\n#2 PROJECT[" +
                    db.column_ref(t, c) + ", #1]\n#3 COMPARATIVE[#1, #2, =" +
                    v1 + "]\n#4 COMPARATIVE[#1, #2, =" + v2 +
                    "]\n#5 UNION[#3, #4]";
  if (chance(rng, 0.3)) out += "\n#6 AGGREGATE[count, #5]";
  return out;
}

std::string t_union_scalar(const GenDb& db, Rng& rng) {
  auto col = find_column(db, rng, Datatype::kNumber);
  size_t t = col->first, c = col->second;
  static const std::vector<std::string> aggs = {"count", "sum", "avg", "min",
                                                "max"};
  std::string a1 = pick_one(rng, aggs);
  std::string a2 = pick_one(rng, aggs);
  return "#1 SELECT[" + db.column_ref(t, c) + "]\n#2 AGGREGATE[" + a1 +
         ", #1]\n#3 AGGREGATE[" + a2 + ", #1]\n#4 UNION[#2, #3]";
}

std::string t_union_attribute(const GenDb& db, Rng& rng) {
  size_t t = 0;  // "size" and "color" both present
  size_t c1 = db.data_columns[t][0], c2 = db.data_columns[t][1];
  if (chance(rng, 0.5)) std::swap(c1, c2);
  return "#1 SELECT[" + db.table_name(t) + "]\n#2 PROJECT[" +
         db.column_ref(t, c1) + ", #1]\n#3 PROJECT[" + db.column_ref(t, c2) +
         ", #1]\n#4 UNION[#2, #3]";
}

std::string t_union_after_group(const GenDb& db, Rng& rng) {
  auto [src, ref] = pick_one(rng, db.links);
  size_t key_table = ref, value_table = src;
  if (db.data_columns[key_table].empty()) std::swap(key_table, value_table);
  size_t c = pick_one(rng, db.data_columns[key_table]);
  return "#1 SELECT[" + db.column_ref(key_table, c) + "]\n#2 PROJECT[" +
         db.table_name(value_table) +
         ", #1]\n#3 GROUP[count, #2, #1]\n#4 UNION[#1, #3]";
}

std::string t_discard(const GenDb& db, Rng& rng) {
  if (chance(rng, 0.5)) {
    auto [src, ref] = pick_one(rng, db.links);
    size_t from = src, to = ref;
    if (chance(rng, 0.5)) std::swap(from, to);
    std::string out = "#1 SELECT[" + db.table_name(from) +
                      "]\n#2 COMPARATIVE[#1, #1, " + db.table_name(to) +
                      "]\n#3 DISCARD[#1, #2]";
    if (!db.data_columns[from].empty()) {
      out += "\n#4 PROJECT[" +
             db.column_ref(from, pick_one(rng, db.data_columns[from])) +
             ", #3]";
    }
    return out;
  }
  auto col = find_column(db, rng, std::nullopt);
  size_t t = col->first, c = col->second;
  std::string val = operand_lexical(db, rng, t, c);
  return "#1 SELECT[" + db.table_name(t) + "]\n#2 PROJECT[" +
         db.column_ref(t, c) + ", #1]\n#3 COMPARATIVE[#1, #2, =" + val +
         "]\n#4 DISCARD[#1, #3]";
}

std::string t_sort(const GenDb& db, Rng& rng) {
  std::string dir = chance(rng, 0.5) ? "asc" : "desc";
  if (chance(rng, 0.5)) {
    auto col = find_column(db, rng, Datatype::kNumber);
    size_t t = col->first, c = col->second;
    return "#1 SELECT[" + db.table_name(t) + "]\n#2 PROJECT[" +
           db.column_ref(t, c) + ", #1]\n#3 SORT[#1, #2, " + dir + "]";
  }
  auto [src, ref] = pick_one(rng, db.links);
  size_t key_table = ref, value_table = src;
  if (db.data_columns[key_table].empty()) std::swap(key_table, value_table);
  size_t c = pick_one(rng, db.data_columns[key_table]);
  return "#1 SELECT[" + db.column_ref(key_table, c) + "]\n#2 PROJECT[" +
         db.table_name(value_table) +
         ", #1]\n#3 GROUP[count, #2, #1]\n#4 SORT[#1, #3, " + dir + "]";
}

std::string t_intersect(const GenDb& db, Rng& rng) {
  auto col = find_column(db, rng, Datatype::kNumber);
  size_t t = col->first, c = col->second;
  std::string v1 = operand_lexical(db, rng, t, c);
  std::string v2 = operand_lexical(db, rng, t, c);
  std::string out = "#1 SELECT[" + db.table_name(t) + "]\n#2 PROJECT[" +
                    db.column_ref(t, c) + ", #1]\n#3 COMPARATIVE[#1, #2, >=" +
                    v1 + "]\n#4 COMPARATIVE[#1, #2, <=" + v2 +
                    "]\n#5 INTERSECT[#1, #3, #4]";
  for (size_t other : db.data_columns[t]) {
    if (other != c) {
      return out + "\n#6 PROJECT[" + db.column_ref(t, other) + ", #5]";
    }
  }
  return out;
}

}  // namespace

GenCase CaseGenerator::next() {
  int tid = counter_ % kTemplateCount;
  ++counter_;
  GenDb db = make_db(rng_);

  std::string text;
  int variant = -1;
  switch (tid) {
    case 0: text = t_select_table(db, rng_); break;
    case 1: text = t_select_column(db, rng_); break;
    case 2: text = t_project_same(db, rng_); break;
    case 3: text = t_project_cross(db, rng_); break;
    case 4: text = t_comparative_number(db, rng_); break;
    case 5: text = t_comparative_text(db, rng_); break;
    case 6: text = t_comparative_related(db, rng_); break;
    case 7: text = t_comparative_entity(db, rng_); break;
    case 8: text = t_comparative_stepref(db, rng_); break;
    case 9: text = t_superlative(db, rng_); break;
    case 10: text = t_superlative_group(db, rng_); break;
    case 11: text = t_aggregate(db, rng_); break;
    case 12: text = t_aggregate_column(db, rng_); break;
    case 13: text = t_group(db, rng_); break;
    case 14: text = t_union_vertical(db, rng_); variant = 0; break;
    case 15: text = t_union_scalar(db, rng_); variant = 1; break;
    case 16: text = t_union_attribute(db, rng_); variant = 2; break;
    case 17: text = t_union_after_group(db, rng_); variant = 3; break;
    case 18: text = t_discard(db, rng_); break;
    case 19: text = t_sort(db, rng_); break;
    default: text = t_intersect(db, rng_); break;
  }

  GenCase out;
  out.schema = std::move(db.schema);
  out.data = std::move(db.data);
  out.qdmr_text = std::move(text);
  out.template_id = tid;
  out.union_variant = variant;
  return out;
}

uint64_t CaseGenerator::seed_from_env(uint64_t fallback) {
  const char* env = std::getenv("QDMR_SPARQL_SEED");
  if (!env || !*env) return fallback;
  return std::strtoull(env, nullptr, 10);
}

DiffStats run_differential(uint64_t seed, int count) {
  DiffStats stats;
  CaseGenerator gen(seed);
  for (int i = 0; i < count; ++i) {
    GenCase c = gen.next();
    ++stats.total;
    if (c.union_variant >= 0)
      ++stats.union_variants[static_cast<size_t>(c.union_variant)];

    auto note_failure = [&](const std::string& what) {
      if (stats.failures.size() < 5) {
        stats.failures.push_back("case " + std::to_string(i) + " (template " +
                                 std::to_string(c.template_id) + "): " + what +
                                 "\n" + c.qdmr_text);
      }
    };

    try {
      GroundedQdmr q = parse_qdmr(c.qdmr_text, c.schema);
      for (const Step& s : q.steps) ++stats.op_counts[to_string(s.op)];

      std::string detail;
      if (qdmr_roundtrip_ok(q, c.schema, &detail)) {
        ++stats.qdmr_roundtrips;
      } else {
        note_failure("decomposition round-trip: " + detail);
      }

      EngineRun run = run_both(c.schema, c.data, q);
      if (sparql_roundtrip_ok(run.query.text, &detail)) {
        ++stats.sparql_roundtrips;
      } else {
        note_failure("query round-trip: " + detail);
      }

      if (engines_agree(run, &detail)) {
        ++stats.agreed;
      } else {
        note_failure(detail);
      }
    } catch (const std::exception& e) {
      note_failure(std::string("exception: ") + e.what());
    }
  }
  return stats;
}

}  // namespace qdmr::testkit
