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
#include <vector>

#include "qdmr/result_table.hpp"

namespace qdmr {

// Outcome of a table comparison: whether the tables matched, which
// alignment rule decided it, and the witnessing column permutation
// (column i of the first table matched column column_permutation[i] of
// the second).
struct MatchVerdict {
  bool match = false;
  std::string rule;
  std::vector<size_t> column_permutation;

  explicit operator bool() const { return match; }
};

// Normalizes a table for comparison: each column's type is inferred from
// its cells (number when every non-null cell reads as a number, else date
// when every non-null cell reads as a date, else text). Numbers are
// rounded to 6 decimals, dates take ISO form, text is trimmed, and nulls
// stay null. Idempotent.
ResultTable standardize(const ResultTable& t);

// Row-multiset equality under a column alignment. Alignment candidates,
// in order: the provenance-guided permutation when every column of both
// tables declares where its values come from (falling back to the given
// order when that permutation fails), otherwise a search over all
// permutations up to 8 columns, otherwise the given order only. Both
// inputs are expected to be standardized.
MatchVerdict equivalent(const ResultTable& a, const ResultTable& b);

// Whether the one row of `single_row` appears among `other`'s rows under
// some column alignment (the same candidates as equivalent()). Used when
// one side picks a single extremal row and the other keeps every tie.
// Throws MisuseError when single_row does not have exactly one row.
bool limit1_contained(const ResultTable& single_row, const ResultTable& other);

// Whether `b` equals `a` up to reordering rows whose sorting keys are
// equal. Keys come from the tables' sort metadata; `a` must carry it
// (MisuseError otherwise), and when `b` carries keys too they must agree
// with `a`'s position by position. Both inputs are expected to be
// standardized.
bool match_sorted(const ResultTable& a, const ResultTable& b);

// Same check with keys read from the named output column of both tables
// (matched like schema identifiers). Throws InputError when either table
// lacks the column.
bool match_sorted(const ResultTable& a, const ResultTable& b,
                  const std::string& key_column);

}  // namespace qdmr
