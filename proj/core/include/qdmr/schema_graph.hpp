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

#include <cstddef>
#include <string>
#include <vector>

#include "qdmr/schema.hpp"

namespace qdmr {

struct ColumnId {
  size_t table = 0;
  size_t column = 0;

  bool operator==(const ColumnId& other) const {
    return table == other.table && column == other.column;
  }
};

// One hop in a join path. An intra-table edge moves between a column and
// its table's primary key on the same row; a foreign-key edge moves from
// a source row to the rows it references (or back, when reversed).
struct JoinEdge {
  enum class Kind { kIntraTable, kForeignKey };

  Kind kind = Kind::kIntraTable;
  ColumnId from;
  ColumnId to;
  // Foreign-key edges only: declaring table, index into its foreign_keys,
  // and whether the edge follows the reference direction.
  size_t fk_table = 0;
  size_t fk_index = 0;
  bool forward = true;
};

struct JoinPath {
  ColumnId source;
  ColumnId target;
  std::vector<JoinEdge> edges;

  size_t length() const { return edges.size(); }
};

// Undirected graph over all schema columns. Edges: every column to its
// table's primary key, and every foreign key's source column to its
// referenced column. Adjacency lists follow schema declaration order, so
// traversal order (and therefore tie-breaking) is deterministic.
class SchemaGraph {
 public:
  explicit SchemaGraph(const Schema& schema);

  const Schema& schema() const { return *schema_; }

  // Shortest path by edge count; equal-length candidates resolve to the
  // first one in adjacency order. Throws NoJoinPathError when the columns
  // are not connected.
  JoinPath join_path(ColumnId from, ColumnId to) const;

  // Up to `limit` distinct simple paths in nondecreasing length order;
  // the first entry equals join_path(). Empty when not connected.
  std::vector<JoinPath> enumerate_join_paths(ColumnId from, ColumnId to,
                                             size_t limit) const;

  size_t node_id(ColumnId c) const;
  ColumnId column_of(size_t node) const { return nodes_[node]; }
  std::string describe(const JoinPath& path) const;

 private:
  const Schema* schema_;
  std::vector<ColumnId> nodes_;
  std::vector<size_t> table_offsets_;
  std::vector<std::vector<JoinEdge>> adjacency_;
};

}  // namespace qdmr
