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

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qdmr/schema.hpp"
#include "qdmr/table_data.hpp"
#include "qdmr/value.hpp"

namespace qdmr {

// Identity of a row: the table it lives in plus its key value. One such
// node exists per row and carries all of the row's cell literals.
struct NodeId {
  std::string table;
  Value key;

  bool operator==(const NodeId& other) const {
    return table == other.table && key == other.key;
  }
};

// A graph term is either a row node or a literal value.
using Term = std::variant<NodeId, Value>;

bool term_equals(const Term& a, const Term& b);
// Total order used for deterministic output: literals before nodes,
// literals by value order, nodes by (table, key).
int term_compare(const Term& a, const Term& b);
size_t term_hash(const Term& t);
// Literals map to themselves, nodes to their key value.
Value term_value(const Term& t);
std::string term_to_string(const Term& t);

struct Triple {
  Term subject;
  std::string predicate;
  Term object;
};

std::string triple_to_string(const Triple& t);

// Attribute arc name: arc:<table>:<column>.
std::string attribute_arc(std::string_view table, std::string_view column);
// Relation arc name: arc:<src_table>:<src_column>:<ref_table>:<ref_column>.
std::string relation_arc(const std::string& src_table, const ForeignKey& fk);

// A non-null foreign-key cell with no matching target row. The triple is
// skipped and the occurrence reported.
struct DanglingForeignKey {
  std::string table;
  std::string column;
  size_t row_ordinal = 0;  // 1-based
  Value value;
};

// Immutable triple store with lookup indexes by (P), (S, P) and (P, O).
class RdfGraph {
 public:
  RdfGraph() = default;
  explicit RdfGraph(std::vector<Triple> triples);

  // Sorted lexicographically by serialized triple, duplicates removed.
  const std::vector<Triple>& triples() const { return triples_; }

  // All triples matching the bound components, in the same lexicographic
  // order as triples(). Unbound components are nullopt.
  std::vector<const Triple*> match(const std::optional<Term>& subject,
                                   const std::optional<std::string>& predicate,
                                   const std::optional<Term>& object) const;

  size_t count(const std::optional<Term>& subject,
               const std::optional<std::string>& predicate,
               const std::optional<Term>& object) const;

  // One "S P O" line per triple, lexicographic order.
  std::string dump() const;

 private:
  std::vector<Triple> triples_;
  std::unordered_map<std::string, std::vector<uint32_t>> by_p_;
  std::unordered_map<std::string, std::vector<uint32_t>> by_sp_;
  std::unordered_map<std::string, std::vector<uint32_t>> by_po_;
};

struct RdfResult {
  RdfGraph graph;
  std::vector<DanglingForeignKey> dangling;
};

// Encodes relational rows as triples:
//   - one self-link (node, arc:t:pk, node) per row,
//   - one (node, arc:t:c, literal) per non-null non-key cell,
//   - one (src_node, relation arc, tgt_node) per resolvable foreign-key cell.
// Requires every table to have a single-column primary key (see
// ensure_key) with unique non-null values; violations raise InputError.
RdfResult to_rdf(const Schema& schema, const TableData& data);

}  // namespace qdmr
