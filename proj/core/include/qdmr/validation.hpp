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
#include "qdmr/table_data.hpp"

namespace qdmr {

struct Violation {
  int step = 0;
  // Stable rule identifiers:
  //   "structure"          step numbering, reference direction, reachability
  //   "aggregator-grounding" aggregation slot grounded to a non-column
  //   "value-cast"         value not castable to its source column's type
  //   "comparative-type"   comparison operand type incompatible with the
  //                        compared attribute
  //   "value-provenance"   value with a source column that neither occurs
  //                        in that column nor is a novel value of its type
  //   "value-unlinked"     value without a source column that does occur
  //                        in the database
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Structural and type checks. Rules that need row data ("value-provenance",
// "value-unlinked") only run when `data` is provided.
ValidationReport validate(const GroundedQdmr& q, const Schema& schema);
ValidationReport validate(const GroundedQdmr& q, const Schema& schema,
                          const TableData& data);

// The column a step's output values come from, when statically known.
// Aggregates and counts have no column provenance.
std::optional<ColumnRef> output_column(const GroundedQdmr& q,
                                       const Schema& schema, int step_index);

// The datatype of a step's output values, when statically known.
std::optional<Datatype> output_type(const GroundedQdmr& q,
                                    const Schema& schema, int step_index);

}  // namespace qdmr
