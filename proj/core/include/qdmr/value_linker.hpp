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

#include "qdmr/logical_form.hpp"
#include "qdmr/schema.hpp"
#include "qdmr/table_data.hpp"

namespace qdmr {

struct ValueCandidate {
  ValueRef value;
  double score = 0.0;
};

// Scores every distinct database value against the question tokens and
// returns the top `k` candidates, scores in [0, 1], nonincreasing. Numeric
// values score 1 only on an exact token match and 0 otherwise; other
// values score 1 on stem equality and a contiguous-subsequence ratio
// otherwise. Number-like and date-like question tokens are added as extra
// candidates without a source column. Ties break by (table, column,
// value) lexicographic order, candidates without a source first.
std::vector<ValueCandidate> match_values(
    const std::vector<std::string>& question_tokens, const Schema& schema,
    const TableData& db, size_t k = 25);

// Lowercases, splits on non-alphanumeric characters, and drops English
// stopwords.
std::vector<std::string> tokenize_question(const std::string& question);

// Porter suffix-stripping stem of a lowercase word.
std::string porter_stem(const std::string& word);

// 2 * longest common contiguous substring / (|a| + |b|); 0 for two empty
// strings.
double lcs_ratio(const std::string& a, const std::string& b);

}  // namespace qdmr
