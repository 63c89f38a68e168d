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

#include "qdmr/exec_match.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>

#include "qdmr/errors.hpp"
#include "qdmr/schema.hpp"

namespace qdmr {

namespace {

constexpr size_t kPermutationLimit = 8;

Value round6(double v) {
  double r = std::round(v * 1e6) / 1e6;
  if (r == 0) r = 0;  // fold -0
  return Value::number(r);
}

std::optional<double> as_number(const Value& v) {
  if (v.is_number()) return v.as_number();
  if (v.is_text()) return parse_number(v.as_string());
  return std::nullopt;
}

std::optional<std::string> as_date(const Value& v) {
  if (v.is_date()) return v.as_string();
  if (v.is_text()) return normalize_date(v.as_string());
  return std::nullopt;
}

enum class ColType { kNumber, kDate, kText };

ColType infer_type(const std::vector<std::vector<Value>>& rows, size_t col) {
  bool any = false;
  bool all_number = true;
  bool all_date = true;
  for (const auto& row : rows) {
    const Value& cell = row[col];
    if (cell.is_null()) continue;
    any = true;
    if (!as_number(cell)) all_number = false;
    if (!as_date(cell)) all_date = false;
  }
  if (!any) return ColType::kText;
  if (all_number) return ColType::kNumber;
  if (all_date) return ColType::kDate;
  return ColType::kText;
}

Value convert(const Value& cell, ColType type) {
  if (cell.is_null()) return Value::null();
  switch (type) {
    case ColType::kNumber:
      return round6(*as_number(cell));
    case ColType::kDate:
      return Value::date(*as_date(cell));
    case ColType::kText:
      return Value::text(std::string(trim(cell.lexical())));
  }
  return cell;
}

std::vector<Value> standardize_keys(std::vector<Value> keys) {
  bool any = false;
  bool all_number = true;
  bool all_date = true;
  for (const Value& k : keys) {
    if (k.is_null()) continue;
    any = true;
    if (!as_number(k)) all_number = false;
    if (!as_date(k)) all_date = false;
  }
  ColType type = !any          ? ColType::kText
                 : all_number  ? ColType::kNumber
                 : all_date    ? ColType::kDate
                               : ColType::kText;
  for (Value& k : keys) k = convert(k, type);
  return keys;
}

std::string cell_key(const Value& v) {
  return std::to_string(static_cast<int>(v.kind())) + ":" + v.lexical();
}

std::string row_signature(const std::vector<Value>& row,
                          const std::vector<size_t>& order) {
  std::string sig;
  for (size_t c : order) {
    sig += cell_key(row[c]);
    sig.push_back('\x1f');
  }
  return sig;
}

// Multiset equality of a's rows (given order) against b's rows with
// columns reordered so that b cell perm[i] lines up with a cell i.
bool rows_match(const ResultTable& a, const ResultTable& b,
                const std::vector<size_t>& perm) {
  if (a.row_count() != b.row_count()) return false;
  std::vector<size_t> identity(a.width());
  std::iota(identity.begin(), identity.end(), 0);
  std::map<std::string, int> counts;
  for (const auto& row : a.rows) counts[row_signature(row, identity)]++;
  for (const auto& row : b.rows) {
    auto it = counts.find(row_signature(row, perm));
    if (it == counts.end() || it->second == 0) return false;
    --it->second;
  }
  return true;
}

std::string column_signature(const ResultColumn& c) {
  std::string sig;
  if (c.source) sig += "c:" + c.source->table + "." + c.source->column;
  if (c.aggregate) sig += ";a:" + to_string(*c.aggregate);
  return sig;
}

bool full_provenance(const ResultTable& t) {
  for (const ResultColumn& c : t.columns) {
    if (!c.source && !c.aggregate) return false;
  }
  return true;
}

// Pairs columns with equal provenance signatures, first come first served
// among duplicates. Empty when the signatures do not pair up.
std::optional<std::vector<size_t>> provenance_permutation(
    const ResultTable& a, const ResultTable& b) {
  if (!full_provenance(a) || !full_provenance(b)) return std::nullopt;
  std::vector<bool> used(b.width(), false);
  std::vector<size_t> perm(a.width(), 0);
  for (size_t i = 0; i < a.width(); ++i) {
    std::string want = column_signature(a.columns[i]);
    bool found = false;
    for (size_t j = 0; j < b.width(); ++j) {
      if (used[j]) continue;
      if (column_signature(b.columns[j]) == want) {
        perm[i] = j;
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return perm;
}

// The column alignments worth trying, most informed first.
std::vector<std::pair<std::string, std::vector<size_t>>> alignments(
    const ResultTable& a, const ResultTable& b) {
  std::vector<std::pair<std::string, std::vector<size_t>>> out;
  size_t w = a.width();
  std::vector<size_t> identity(w);
  std::iota(identity.begin(), identity.end(), 0);

  if (auto prov = provenance_permutation(a, b)) {
    out.push_back({"provenance", *prov});
    if (*prov != identity) out.push_back({"given-order", identity});
    return out;
  }
  if (w <= kPermutationLimit) {
    std::vector<size_t> perm = identity;
    do {
      out.push_back({perm == identity ? "given-order" : "permutation", perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }
  out.push_back({"given-order", identity});
  return out;
}

}  // namespace

ResultTable standardize(const ResultTable& t) {
  ResultTable out;
  out.columns = t.columns;
  out.rows = t.rows;
  for (size_t c = 0; c < t.width(); ++c) {
    ColType type = infer_type(t.rows, c);
    for (auto& row : out.rows) row[c] = convert(row[c], type);
  }
  if (t.sort) {
    SortMeta meta;
    meta.direction = t.sort->direction;
    meta.keys = standardize_keys(t.sort->keys);
    out.sort = std::move(meta);
  }
  return out;
}

MatchVerdict equivalent(const ResultTable& a, const ResultTable& b) {
  MatchVerdict v;
  if (a.width() != b.width()) {
    v.rule = "width-mismatch";
    return v;
  }
  for (auto& [rule, perm] : alignments(a, b)) {
    if (rows_match(a, b, perm)) {
      v.match = true;
      v.rule = rule;
      v.column_permutation = perm;
      return v;
    }
  }
  v.rule = "no-match";
  return v;
}

bool limit1_contained(const ResultTable& single_row, const ResultTable& other) {
  if (single_row.row_count() != 1)
    throw MisuseError("limit1 comparison needs exactly one row, got " +
                      std::to_string(single_row.row_count()));
  if (single_row.width() != other.width()) return false;
  std::vector<size_t> identity(single_row.width());
  std::iota(identity.begin(), identity.end(), 0);
  std::string want = row_signature(single_row.rows[0], identity);
  for (auto& [rule, perm] : alignments(single_row, other)) {
    (void)rule;
    for (const auto& row : other.rows) {
      if (row_signature(row, perm) == want) return true;
    }
  }
  return false;
}

namespace {

bool match_sorted_impl(const ResultTable& a, const ResultTable& b,
                       const std::vector<Value>& a_keys,
                       const std::vector<Value>* b_keys) {
  if (a.width() != b.width() || a.row_count() != b.row_count()) return false;
  if (a_keys.size() != a.row_count()) return false;
  if (b_keys != nullptr) {
    if (b_keys->size() != b.row_count()) return false;
    for (size_t i = 0; i < a_keys.size(); ++i) {
      if (a_keys[i].compare_total((*b_keys)[i]) != 0) return false;
    }
  }

  std::vector<size_t> identity(a.width());
  std::iota(identity.begin(), identity.end(), 0);

  // Blocks of consecutive equal keys; row order inside a block is free.
  size_t i = 0;
  while (i < a.row_count()) {
    size_t j = i + 1;
    while (j < a.row_count() && a_keys[j].compare_total(a_keys[i]) == 0) ++j;
    std::map<std::string, int> counts;
    for (size_t r = i; r < j; ++r) {
      counts[row_signature(a.rows[r], identity)]++;
    }
    for (size_t r = i; r < j; ++r) {
      auto it = counts.find(row_signature(b.rows[r], identity));
      if (it == counts.end() || it->second == 0) return false;
      --it->second;
    }
    i = j;
  }
  return true;
}

}  // namespace

bool match_sorted(const ResultTable& a, const ResultTable& b) {
  if (!a.sort) throw MisuseError("first table carries no ordering");
  const std::vector<Value>* b_keys = b.sort ? &b.sort->keys : nullptr;
  return match_sorted_impl(a, b, a.sort->keys, b_keys);
}

bool match_sorted(const ResultTable& a, const ResultTable& b,
                  const std::string& key_column) {
  auto find = [&](const ResultTable& t) -> size_t {
    std::string want = fold_identifier(key_column);
    for (size_t i = 0; i < t.columns.size(); ++i) {
      if (fold_identifier(t.columns[i].name) == want) return i;
    }
    throw InputError("no output column named '" + key_column + "'");
  };
  size_t ac = find(a);
  size_t bc = find(b);
  std::vector<Value> a_keys;
  std::vector<Value> b_keys;
  for (const auto& row : a.rows) a_keys.push_back(row[ac]);
  for (const auto& row : b.rows) b_keys.push_back(row[bc]);
  return match_sorted_impl(a, b, a_keys, &b_keys);
}

}  // namespace qdmr
