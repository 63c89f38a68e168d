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

#include "qdmr/sparql_ast.hpp"

#include <sstream>

#include "qdmr/errors.hpp"

namespace qdmr {

std::string to_string(const Value& literal) {
  if (literal.is_number()) return literal.lexical();
  std::string out = "\"";
  for (char c : literal.lexical()) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string to_string(const TermPattern& term) {
  if (const Var* v = std::get_if<Var>(&term)) return "?" + v->name;
  return to_string(std::get<Value>(term));
}

std::string to_string(FilterOp op) {
  switch (op) {
    case FilterOp::kEq:
      return "=";
    case FilterOp::kNe:
      return "!=";
    case FilterOp::kLt:
      return "<";
    case FilterOp::kLe:
      return "<=";
    case FilterOp::kGt:
      return ">";
    case FilterOp::kGe:
      return ">=";
    case FilterOp::kContains:
      return "contains";
  }
  return "=";
}

namespace {

std::string aggregator_keyword(Aggregator a) {
  switch (a) {
    case Aggregator::kCount:
      return "COUNT";
    case Aggregator::kSum:
      return "SUM";
    case Aggregator::kAvg:
      return "AVG";
    case Aggregator::kMin:
      return "MIN";
    case Aggregator::kMax:
      return "MAX";
  }
  return "COUNT";
}

class Writer {
 public:
  std::string result() { return out_.str(); }

  void write_query(const SelectQuery& q, int indent) {
    line(indent, select_header(q) + " WHERE {");
    write_pattern(q.where, indent + 1);
    line(indent, "}");
    if (!q.group_by.empty()) {
      std::string clause = "GROUP BY";
      for (const Var& v : q.group_by) clause += " ?" + v.name;
      line(indent, clause);
    }
    if (q.order_by) {
      line(indent, std::string("ORDER BY ") +
                       (q.order_by->direction == SortDirection::kAsc ? "ASC(?"
                                                                     : "DESC(?") +
                       q.order_by->var.name + ")");
    }
  }

 private:
  std::string select_header(const SelectQuery& q) const {
    std::string out = "SELECT";
    if (q.distinct) out += " DISTINCT";
    for (const ProjectionItem& item : q.projection) {
      out += ' ';
      if (const Var* v = std::get_if<Var>(&item.expr)) {
        out += "?" + v->name;
      } else {
        const AggExpr& agg = std::get<AggExpr>(item.expr);
        out += "(" + aggregator_keyword(agg.func) + "(";
        if (agg.distinct) out += "DISTINCT ";
        out += "?" + agg.arg.name + ") AS ?" + item.alias->name + ")";
      }
    }
    return out;
  }

  void write_pattern(const GroupGraphPattern& p, int indent) {
    for (const GraphElement& e : p.elements) {
      std::visit([&](const auto& node) { write_element(node, indent); },
                 e.node);
    }
  }

  void write_element(const TriplePattern& t, int indent) {
    line(indent, "?" + t.subject.name + " " + t.predicate + " " +
                     to_string(t.object) + " .");
  }

  void write_element(const FilterExpr& f, int indent) {
    if (f.op == FilterOp::kContains) {
      line(indent, "FILTER(CONTAINS(LCASE(STR(?" + f.lhs.name + ")), " +
                       contains_needle(f.rhs) + "))");
      return;
    }
    line(indent, "FILTER(?" + f.lhs.name + " " + to_string(f.op) + " " +
                     to_string(f.rhs) + ")");
  }

  std::string contains_needle(const TermPattern& rhs) const {
    if (const Var* v = std::get_if<Var>(&rhs))
      return "LCASE(STR(?" + v->name + "))";
    const Value& val = std::get<Value>(rhs);
    return to_string(Value::text(to_lower(val.lexical())));
  }

  void write_element(const UnionExpr& u, int indent) {
    for (size_t i = 0; i < u.branches.size(); ++i) {
      if (i > 0) line(indent, "UNION");
      line(indent, "{");
      write_pattern(u.branches[i], indent + 1);
      line(indent, "}");
    }
  }

  void write_element(const MinusExpr& m, int indent) {
    line(indent, "MINUS {");
    write_pattern(m.pattern.front(), indent + 1);
    line(indent, "}");
  }

  void write_element(const SubSelect& s, int indent) {
    line(indent, "{");
    write_query(*s.query, indent + 1);
    line(indent, "}");
  }

  void line(int indent, const std::string& text) {
    for (int i = 0; i < indent; ++i) out_ << "  ";
    out_ << text << '\n';
  }

  std::ostringstream out_;
};

}  // namespace

std::string serialize_sparql(const SelectQuery& query) {
  Writer w;
  w.write_query(query, 0);
  std::string out = w.result();
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

}  // namespace qdmr
