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

#include "qdmr/rdf_graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qdmr/errors.hpp"

namespace qdmr {

bool term_equals(const Term& a, const Term& b) {
  return term_compare(a, b) == 0;
}

int term_compare(const Term& a, const Term& b) {
  bool a_node = std::holds_alternative<NodeId>(a);
  bool b_node = std::holds_alternative<NodeId>(b);
  if (a_node != b_node) return a_node ? 1 : -1;
  if (!a_node) return std::get<Value>(a).compare_total(std::get<Value>(b));
  const NodeId& na = std::get<NodeId>(a);
  const NodeId& nb = std::get<NodeId>(b);
  if (int c = na.table.compare(nb.table); c != 0) return c < 0 ? -1 : 1;
  return na.key.compare_total(nb.key);
}

size_t term_hash(const Term& t) {
  if (const NodeId* n = std::get_if<NodeId>(&t)) {
    return std::hash<std::string>()(n->table) * 1000003u ^ n->key.hash();
  }
  return std::get<Value>(t).hash() * 31u + 7u;
}

Value term_value(const Term& t) {
  if (const NodeId* n = std::get_if<NodeId>(&t)) return n->key;
  return std::get<Value>(t);
}

namespace {

std::string quote_if_needed(const std::string& s) {
  bool needs = s.empty() || s.find_first_of(" \t\r\n\"") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string term_to_string(const Term& t) {
  if (const NodeId* n = std::get_if<NodeId>(&t)) {
    return n->table + ":" + quote_if_needed(n->key.lexical());
  }
  const Value& v = std::get<Value>(t);
  if (v.is_number()) return v.lexical();
  return quote_if_needed(v.lexical()) == v.lexical()
             ? "\"" + v.lexical() + "\""
             : quote_if_needed(v.lexical());
}

std::string triple_to_string(const Triple& t) {
  return term_to_string(t.subject) + " " + t.predicate + " " +
         term_to_string(t.object);
}

std::string attribute_arc(std::string_view table, std::string_view column) {
  return "arc:" + std::string(table) + ":" + std::string(column);
}

std::string relation_arc(const std::string& src_table, const ForeignKey& fk) {
  return "arc:" + src_table + ":" + fk.column + ":" + fk.ref_table + ":" +
         fk.ref_column;
}

RdfGraph::RdfGraph(std::vector<Triple> triples) : triples_(std::move(triples)) {
  std::sort(triples_.begin(), triples_.end(),
            [](const Triple& a, const Triple& b) {
              return triple_to_string(a) < triple_to_string(b);
            });
  triples_.erase(std::unique(triples_.begin(), triples_.end(),
                             [](const Triple& a, const Triple& b) {
                               return triple_to_string(a) == triple_to_string(b);
                             }),
                 triples_.end());
  for (uint32_t i = 0; i < triples_.size(); ++i) {
    const Triple& t = triples_[i];
    std::string s = term_to_string(t.subject);
    std::string o = term_to_string(t.object);
    by_p_[t.predicate].push_back(i);
    by_sp_[s + "\x1f" + t.predicate].push_back(i);
    by_po_[t.predicate + "\x1f" + o].push_back(i);
  }
}

std::vector<const Triple*> RdfGraph::match(
    const std::optional<Term>& subject,
    const std::optional<std::string>& predicate,
    const std::optional<Term>& object) const {
  std::vector<const Triple*> out;
  auto emit_filtered = [&](const std::vector<uint32_t>& candidates) {
    for (uint32_t i : candidates) {
      const Triple& t = triples_[i];
      if (subject && !term_equals(t.subject, *subject)) continue;
      if (object && !term_equals(t.object, *object)) continue;
      out.push_back(&t);
    }
  };

  if (predicate) {
    const std::unordered_map<std::string, std::vector<uint32_t>>* index = &by_p_;
    std::string key = *predicate;
    if (subject) {
      index = &by_sp_;
      key = term_to_string(*subject) + "\x1f" + *predicate;
    } else if (object) {
      index = &by_po_;
      key = *predicate + "\x1f" + term_to_string(*object);
    }
    auto it = index->find(key);
    if (it == index->end()) return out;
    emit_filtered(it->second);
    return out;
  }

  for (uint32_t i = 0; i < triples_.size(); ++i) {
    const Triple& t = triples_[i];
    if (subject && !term_equals(t.subject, *subject)) continue;
    if (object && !term_equals(t.object, *object)) continue;
    out.push_back(&t);
  }
  return out;
}

size_t RdfGraph::count(const std::optional<Term>& subject,
                       const std::optional<std::string>& predicate,
                       const std::optional<Term>& object) const {
  return match(subject, predicate, object).size();
}

std::string RdfGraph::dump() const {
  std::ostringstream out;
  for (const Triple& t : triples_) out << triple_to_string(t) << '\n';
  return out.str();
}

RdfResult to_rdf(const Schema& schema, const TableData& data) {
  data.check(schema);
  std::vector<Triple> triples;
  std::vector<DanglingForeignKey> dangling;

  // Key value -> node, per table, for foreign-key resolution.
  std::vector<std::map<Value, NodeId>> key_nodes(schema.tables().size());

  for (size_t ti = 0; ti < schema.tables().size(); ++ti) {
    const Table& table = schema.tables()[ti];
    auto pk = table.primary_key_index();
    if (!pk)
      throw InputError("table " + table.name +
                       " has no single-column primary key; run ensure_key");
    for (const Row& row : data.rows(ti)) {
      const Value& key = row[*pk];
      if (key.is_null())
        throw InputError("null primary key in table " + table.name);
      NodeId node{table.name, key};
      if (!key_nodes[ti].emplace(key, node).second)
        throw InputError("duplicate primary key in table " + table.name);
      triples.push_back(
          {node, attribute_arc(table.name, table.columns[*pk].name), node});
      for (size_t ci = 0; ci < row.size(); ++ci) {
        if (ci == *pk || row[ci].is_null()) continue;
        triples.push_back(
            {node, attribute_arc(table.name, table.columns[ci].name), row[ci]});
      }
    }
  }

  for (size_t ti = 0; ti < schema.tables().size(); ++ti) {
    const Table& table = schema.tables()[ti];
    auto pk = table.primary_key_index();
    for (const ForeignKey& fk : table.foreign_keys) {
      auto src_ci = table.column_index(fk.column);
      auto tgt_ti = schema.table_index(fk.ref_table);
      const Table& target = schema.tables()[*tgt_ti];
      auto tgt_ci = target.column_index(fk.ref_column);
      auto tgt_pk = target.primary_key_index();
      std::string arc = relation_arc(table.name, fk);
      size_t ordinal = 0;
      for (const Row& row : data.rows(ti)) {
        ++ordinal;
        const Value& sv = row[*src_ci];
        if (sv.is_null()) continue;
        NodeId src_node{table.name, row[*pk]};
        bool resolved = false;
        if (*tgt_ci == *tgt_pk) {
          auto it = key_nodes[*tgt_ti].find(sv);
          if (it != key_nodes[*tgt_ti].end()) {
            triples.push_back({src_node, arc, it->second});
            resolved = true;
          }
        } else {
          // Non-key reference column: link to every row whose cell matches.
          for (const Row& trow : data.rows(*tgt_ti)) {
            if (trow[*tgt_ci] == sv) {
              triples.push_back({src_node, arc, NodeId{target.name, trow[*tgt_pk]}});
              resolved = true;
            }
          }
        }
        if (!resolved) {
          dangling.push_back({table.name, fk.column, ordinal, sv});
        }
      }
    }
  }

  return {RdfGraph(std::move(triples)), std::move(dangling)};
}

}  // namespace qdmr
