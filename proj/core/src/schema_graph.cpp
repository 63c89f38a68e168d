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

#include "qdmr/schema_graph.hpp"

#include <deque>
#include <sstream>

#include "qdmr/errors.hpp"

namespace qdmr {

SchemaGraph::SchemaGraph(const Schema& schema) : schema_(&schema) {
  const auto& tables = schema.tables();
  table_offsets_.reserve(tables.size());
  for (size_t ti = 0; ti < tables.size(); ++ti) {
    table_offsets_.push_back(nodes_.size());
    for (size_t ci = 0; ci < tables[ti].columns.size(); ++ci) {
      nodes_.push_back({ti, ci});
    }
  }
  adjacency_.resize(nodes_.size());

  auto add_edge = [this](JoinEdge e) {
    adjacency_[node_id(e.from)].push_back(e);
    JoinEdge back = e;
    back.from = e.to;
    back.to = e.from;
    back.forward = e.kind == JoinEdge::Kind::kForeignKey ? !e.forward : true;
    adjacency_[node_id(back.from)].push_back(back);
  };

  for (size_t ti = 0; ti < tables.size(); ++ti) {
    const Table& t = tables[ti];
    auto pk = t.primary_key_index();
    if (pk) {
      for (size_t ci = 0; ci < t.columns.size(); ++ci) {
        if (ci == *pk) continue;
        add_edge({JoinEdge::Kind::kIntraTable, {ti, *pk}, {ti, ci}});
      }
    }
  }
  for (size_t ti = 0; ti < tables.size(); ++ti) {
    const Table& t = tables[ti];
    for (size_t fi = 0; fi < t.foreign_keys.size(); ++fi) {
      const ForeignKey& fk = t.foreign_keys[fi];
      auto src_ci = t.column_index(fk.column);
      auto tgt_ti = schema.table_index(fk.ref_table);
      if (!src_ci || !tgt_ti) continue;
      auto tgt_ci = tables[*tgt_ti].column_index(fk.ref_column);
      if (!tgt_ci) continue;
      JoinEdge e;
      e.kind = JoinEdge::Kind::kForeignKey;
      e.from = {ti, *src_ci};
      e.to = {*tgt_ti, *tgt_ci};
      e.fk_table = ti;
      e.fk_index = fi;
      e.forward = true;
      if (node_id(e.from) == node_id(e.to)) continue;  // self-referencing cell
      add_edge(e);
    }
  }
}

size_t SchemaGraph::node_id(ColumnId c) const {
  return table_offsets_[c.table] + c.column;
}

JoinPath SchemaGraph::join_path(ColumnId from, ColumnId to) const {
  auto paths = enumerate_join_paths(from, to, 1);
  if (paths.empty()) {
    const auto& tables = schema_->tables();
    throw NoJoinPathError(
        "no join path from " + tables[from.table].name + "." +
        tables[from.table].columns[from.column].name + " to " +
        tables[to.table].name + "." + tables[to.table].columns[to.column].name);
  }
  return paths.front();
}

std::vector<JoinPath> SchemaGraph::enumerate_join_paths(ColumnId from,
                                                        ColumnId to,
                                                        size_t limit) const {
  std::vector<JoinPath> out;
  if (limit == 0) return out;
  if (from == to) {
    out.push_back({from, to, {}});
    if (out.size() >= limit) return out;
  }

  // Breadth-first search over simple paths; FIFO order makes the result
  // nondecreasing in length and ties follow adjacency order.
  struct Candidate {
    std::vector<JoinEdge> edges;
    std::vector<bool> visited;
    size_t tip;
  };
  std::deque<Candidate> queue;
  Candidate start;
  start.visited.assign(nodes_.size(), false);
  start.visited[node_id(from)] = true;
  start.tip = node_id(from);
  queue.push_back(std::move(start));

  size_t expansions = 0;
  constexpr size_t kMaxExpansions = 20000;
  while (!queue.empty() && out.size() < limit && expansions < kMaxExpansions) {
    Candidate cur = std::move(queue.front());
    queue.pop_front();
    ++expansions;
    for (const JoinEdge& e : adjacency_[cur.tip]) {
      size_t next = node_id(e.to);
      if (cur.visited[next]) continue;
      Candidate ext = cur;
      ext.edges.push_back(e);
      ext.visited[next] = true;
      ext.tip = next;
      if (next == node_id(to)) {
        out.push_back({from, to, ext.edges});
        if (out.size() >= limit) return out;
      }
      queue.push_back(std::move(ext));
    }
  }
  return out;
}

std::string SchemaGraph::describe(const JoinPath& path) const {
  const auto& tables = schema_->tables();
  auto name = [&](ColumnId c) {
    return tables[c.table].name + "." + tables[c.table].columns[c.column].name;
  };
  std::ostringstream out;
  out << name(path.source);
  for (const JoinEdge& e : path.edges) {
    out << (e.kind == JoinEdge::Kind::kForeignKey ? " => " : " -> ");
    out << name(e.to);
  }
  return out.str();
}

}  // namespace qdmr
