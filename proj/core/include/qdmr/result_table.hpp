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
#include <vector>

#include "qdmr/logical_form.hpp"
#include "qdmr/value.hpp"

namespace qdmr {

// Where an output column's values came from: a database column, an
// aggregate, or unknown (for tables read back from CSV).
struct ResultColumn {
  std::string name;
  std::optional<ColumnRef> source;
  std::optional<Aggregator> aggregate;
};

// Ordering information attached to a sorted result: the sort direction
// and one key value per row (kept even when the key is not an output
// column). Equal-key rows form blocks whose internal order is free.
struct SortMeta {
  SortDirection direction = SortDirection::kAsc;
  std::vector<Value> keys;
};

// A bag of rows. Row order is meaningful only when `sort` is set.
struct ResultTable {
  std::vector<ResultColumn> columns;
  std::vector<std::vector<Value>> rows;
  std::optional<SortMeta> sort;

  size_t width() const { return columns.size(); }
  size_t row_count() const { return rows.size(); }
  bool ordered() const { return sort.has_value(); }

  std::string to_csv() const;
  // Cells come back as text (empty cells as nulls); standardize() from
  // the comparison module recovers numeric and date types.
  static ResultTable from_csv(const std::string& csv);
};

}  // namespace qdmr
