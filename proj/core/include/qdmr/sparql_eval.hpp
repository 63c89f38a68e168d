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

#include "qdmr/rdf_graph.hpp"
#include "qdmr/result_table.hpp"
#include "qdmr/sparql_ast.hpp"
#include "qdmr/transpiler.hpp"

namespace qdmr {

// Bag-semantics evaluation over a triple store.
//
// Evaluation rules shared with the reference interpreter:
//   - comparisons coerce row nodes to their key value, then compare
//     within one kind; cross-kind comparisons are false
//   - DISTINCT, GROUP BY and MINUS work on terms (row identity for
//     nodes), never on coerced values
//   - ungrouped COUNT/SUM of an empty pattern yield one row (0); MIN,
//     MAX and AVG yield no row; with GROUP BY there are no groups
//   - SUM and AVG aggregate the numeric values in the group (AVG over a
//     group without any yields no row); MIN/MAX use the total value order
//   - ORDER BY sorts by the key, breaking ties by the serialized row
ResultTable evaluate(const SparqlQuery& query, const RdfGraph& graph);

// Evaluates a bare parsed query (no output provenance): column names are
// the projected variable names.
ResultTable evaluate(const SelectQuery& ast, const RdfGraph& graph);

}  // namespace qdmr
