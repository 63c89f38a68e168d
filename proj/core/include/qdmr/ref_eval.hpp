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

#include "qdmr/logical_form.hpp"
#include "qdmr/result_table.hpp"
#include "qdmr/schema.hpp"
#include "qdmr/table_data.hpp"

namespace qdmr {

// Reference interpreter: evaluates a grounded decomposition directly over
// table rows with nested loops, sharing only the join-path definition
// with the query compiler. Its results are compared against
// transpile + evaluate in differential tests; the two implementations
// follow the same semantic rules (see sparql_eval.hpp) but share no
// execution machinery.
ResultTable ref_evaluate(const GroundedQdmr& q, const Schema& schema,
                         const TableData& data);

}  // namespace qdmr
