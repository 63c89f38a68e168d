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

#include "testkit/checks.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "qdmr/exec_match.hpp"
#include "qdmr/qdmr_parser.hpp"
#include "qdmr/rdf_graph.hpp"
#include "qdmr/ref_eval.hpp"
#include "qdmr/sparql_eval.hpp"
#include "qdmr/sparql_parser.hpp"

namespace qdmr::testkit {

EngineRun run_both(const Schema& schema, const TableData& data,
                   const GroundedQdmr& q) {
  EngineRun run;
  run.query = transpile(q, schema);
  RdfGraph graph = to_rdf(schema, data).graph;
  run.via_sparql = standardize(evaluate(run.query, graph));
  run.via_rows = standardize(ref_evaluate(q, schema, data));
  return run;
}

bool engines_agree(const EngineRun& run, std::string* detail) {
  MatchVerdict verdict = equivalent(run.via_sparql, run.via_rows);
  if (!verdict.match) {
    *detail = "row multisets differ (" + verdict.rule + "), " +
              std::to_string(run.via_sparql.row_count()) + " vs " +
              std::to_string(run.via_rows.row_count()) + " rows";
    return false;
  }
  if (run.via_sparql.sort && run.via_rows.sort &&
      !match_sorted(run.via_sparql, run.via_rows)) {
    *detail = "row order differs beyond equal-key blocks";
    return false;
  }
  *detail = verdict.rule;
  return true;
}

ResultTable run_text(const Schema& schema, const TableData& data,
                     const std::string& qdmr_text) {
  GroundedQdmr q = parse_qdmr(qdmr_text, schema);
  return run_both(schema, data, q).via_sparql;
}

namespace {

std::string row_string(const std::vector<Value>& row) {
  std::string out;
  for (const Value& v : row) {
    out += v.lexical();
    out += '\x1f';
  }
  return out;
}

}  // namespace

bool rows_equal_unordered(const ResultTable& got,
                          const std::vector<std::vector<Value>>& expected,
                          std::string* detail) {
  if (!expected.empty() && got.width() != expected.front().size()) {
    *detail = "width " + std::to_string(got.width()) + ", expected " +
              std::to_string(expected.front().size());
    return false;
  }
  std::map<std::string, int> counts;
  for (const auto& row : got.rows) ++counts[row_string(row)];
  for (const auto& row : expected) --counts[row_string(row)];
  for (const auto& [key, n] : counts) {
    if (n != 0) {
      *detail = std::string(n > 0 ? "unexpected" : "missing") + " row [" + key +
                "]";
      return false;
    }
  }
  if (got.row_count() != expected.size()) {
    *detail = std::to_string(got.row_count()) + " rows, expected " +
              std::to_string(expected.size());
    return false;
  }
  *detail = "ok";
  return true;
}

bool same_modulo_whitespace(const std::string& a, const std::string& b) {
  auto squeeze = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
  };
  return squeeze(a) == squeeze(b);
}

bool qdmr_roundtrip_ok(const GroundedQdmr& q, const Schema& schema,
                       std::string* detail) {
  std::string once = serialize(q);
  GroundedQdmr reparsed = parse_qdmr(once, schema);
  std::string twice = serialize(reparsed);
  if (once != twice) {
    *detail = "serialize mismatch:\n" + once + "\n---\n" + twice;
    return false;
  }
  return true;
}

bool sparql_roundtrip_ok(const std::string& query_text, std::string* detail) {
  SelectQuery ast = parse_sparql(query_text);
  std::string again = serialize_sparql(ast);
  if (again != query_text) {
    *detail = "serialize mismatch:\n" + query_text + "\n---\n" + again;
    return false;
  }
  return true;
}

std::vector<ColumnId> all_columns(const Schema& schema) {
  std::vector<ColumnId> out;
  for (size_t t = 0; t < schema.tables().size(); ++t) {
    for (size_t c = 0; c < schema.tables()[t].columns.size(); ++c) {
      out.push_back({t, c});
    }
  }
  return out;
}

namespace {

// Depth-first enumeration of simple paths, tracking the best length.
void dfs_paths(const std::vector<std::vector<size_t>>& adjacency, size_t at,
               size_t target, std::vector<bool>& visited, size_t depth,
               std::optional<size_t>& best) {
  if (at == target) {
    if (!best || depth < *best) best = depth;
    return;
  }
  if (best && depth >= *best) return;
  visited[at] = true;
  for (size_t next : adjacency[at]) {
    if (!visited[next]) {
      dfs_paths(adjacency, next, target, visited, depth + 1, best);
    }
  }
  visited[at] = false;
}

}  // namespace

std::optional<size_t> brute_force_shortest(const Schema& schema, ColumnId from,
                                           ColumnId to) {
  std::vector<ColumnId> nodes = all_columns(schema);
  auto id_of = [&](ColumnId c) {
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i] == c) return i;
    }
    return nodes.size();
  };

  std::vector<std::vector<size_t>> adjacency(nodes.size());
  auto link = [&](ColumnId a, ColumnId b) {
    size_t ia = id_of(a), ib = id_of(b);
    adjacency[ia].push_back(ib);
    adjacency[ib].push_back(ia);
  };
  for (size_t t = 0; t < schema.tables().size(); ++t) {
    const Table& table = schema.tables()[t];
    auto pk = table.primary_key_index();
    if (!pk) continue;
    for (size_t c = 0; c < table.columns.size(); ++c) {
      if (c != *pk) link({t, c}, {t, *pk});
    }
    for (const ForeignKey& fk : table.foreign_keys) {
      auto src = table.column_index(fk.column);
      auto rt = schema.table_index(fk.ref_table);
      if (!src || !rt) continue;
      auto ref = schema.tables()[*rt].column_index(fk.ref_column);
      if (ref) link({t, *src}, {*rt, *ref});
    }
  }

  std::optional<size_t> best;
  std::vector<bool> visited(nodes.size(), false);
  dfs_paths(adjacency, id_of(from), id_of(to), visited, 0, best);
  return best;
}

}  // namespace qdmr::testkit
