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
#include "qdmr/schema.hpp"
#include "qdmr/schema_graph.hpp"
#include "qdmr/sparql_ast.hpp"

namespace qdmr {

// Provenance of one output column of a compiled query.
struct QueryOutput {
  std::string name;
  std::optional<ColumnRef> source;
  std::optional<Aggregator> aggregate;
};

struct SparqlQuery {
  SelectQuery ast;
  std::string text;  // canonical serialization of `ast`
  std::vector<QueryOutput> outputs;
};

// Compiles a grounded decomposition to an executable query.
//
// Steps realize into a shared graph pattern where conjunction is meant
// (filters, intersections, projections over the same rows) and into
// subqueries where isolation is meant: aggregate and group computations,
// branches of a value union, and the excluded side of DISCARD. Joins
// between entities follow the shortest join path over the schema graph.
//
// Throws NoJoinPathError when two entities cannot be connected and
// UnsupportedShapeError for structurally valid decompositions outside the
// expressible set (e.g. projecting from a bare aggregate, or a UNION
// mixing repeated and unrelated source columns).
SparqlQuery transpile(const GroundedQdmr& q, const Schema& schema);

}  // namespace qdmr
