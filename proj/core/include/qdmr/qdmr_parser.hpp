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

#include "qdmr/logical_form.hpp"
#include "qdmr/schema.hpp"

namespace qdmr {

// Parses a grounded decomposition, one step per line:
//
//   #1 SELECT[school]
//   #2 PROJECT[school.Name, #1]
//   #3 COMPARATIVE[#2, #2, like "park"]
//
// Identifiers resolve against the schema case-insensitively, ignoring
// spaces and underscores. A bare identifier is a table, Table.Column is a
// column, anything else is a value (quote values containing commas or
// brackets). Values may carry a source column as value@Table.Column.
// The third COMPARATIVE argument may start with a comparator
// (=, !=, <, <=, >, >=, like, and the glyphs ≠, ≤, ≥).
// A trailing ", distinct" argument sets the step's distinct flag.
//
// Errors: SyntaxError (malformed line, non-contiguous step numbers,
// unreachable steps), UnknownEntityError (an entity slot whose identifier
// does not resolve), BadArityError (wrong argument count or kind),
// ForwardRefError (a reference to the step itself or a later step).
GroundedQdmr parse_qdmr(const std::string& text, const Schema& schema);

}  // namespace qdmr
