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

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qdmr/logical_form.hpp"
#include "qdmr/value.hpp"

namespace qdmr {

// Supported query subset: basic graph patterns, comparison and substring
// filters, subqueries, GROUP BY with COUNT/SUM/AVG/MIN/MAX, UNION, MINUS,
// ORDER BY and DISTINCT. Predicates are plain arc names, never IRIs.

struct Var {
  std::string name;  // without the leading '?'

  bool operator==(const Var& other) const { return name == other.name; }
  bool operator<(const Var& other) const { return name < other.name; }
};

using TermPattern = std::variant<Var, Value>;

struct TriplePattern {
  Var subject;
  std::string predicate;
  TermPattern object;
};

// kContains serializes as FILTER(CONTAINS(LCASE(STR(?v)), "needle")):
// case-insensitive substring containment.
enum class FilterOp { kEq, kNe, kLt, kLe, kGt, kGe, kContains };

struct FilterExpr {
  FilterOp op = FilterOp::kEq;
  Var lhs;
  TermPattern rhs;
};

struct GroupGraphPattern;

struct UnionExpr {
  std::vector<GroupGraphPattern> branches;  // two or more
};

struct MinusExpr {
  std::vector<GroupGraphPattern> pattern;  // exactly one
};

struct SelectQuery;

struct SubSelect {
  std::shared_ptr<const SelectQuery> query;
};

struct GraphElement {
  std::variant<TriplePattern, FilterExpr, UnionExpr, MinusExpr, SubSelect> node;
};

struct GroupGraphPattern {
  std::vector<GraphElement> elements;
};

struct AggExpr {
  Aggregator func = Aggregator::kCount;
  bool distinct = false;
  Var arg;
};

// Either a plain variable or an aggregate with a mandatory alias.
struct ProjectionItem {
  std::variant<Var, AggExpr> expr;
  std::optional<Var> alias;

  const Var& output_var() const {
    return alias ? *alias : std::get<Var>(expr);
  }
};

struct OrderKey {
  Var var;
  SortDirection direction = SortDirection::kAsc;
};

struct SelectQuery {
  bool distinct = false;
  std::vector<ProjectionItem> projection;
  GroupGraphPattern where;
  std::vector<Var> group_by;
  std::optional<OrderKey> order_by;
};

// Canonical text: one clause per line, two-space indent per nesting level,
// uppercase keywords, a period after each triple pattern.
std::string serialize_sparql(const SelectQuery& query);

std::string to_string(const Value& literal);  // query literal syntax
std::string to_string(const TermPattern& term);
std::string to_string(FilterOp op);

}  // namespace qdmr
