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

#include "qdmr/sparql_ast.hpp"

namespace qdmr {

// Parses the supported query subset (see sparql_ast.hpp). Whitespace is
// free-form and keywords are case-insensitive; serialize_sparql() of the
// result reproduces the canonical layout. Quoted literals that look like
// ISO dates are read back as dates, everything else as text.
//
// Throws UnsupportedFeatureError for recognizable SPARQL outside the
// subset (OPTIONAL, PREFIX, LIMIT, HAVING, BIND, VALUES, property paths,
// IRIs, ...) and SyntaxError for text that is not a query at all.
SelectQuery parse_sparql(const std::string& text);

}  // namespace qdmr
