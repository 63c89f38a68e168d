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

#include "qdmr/logical_form.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "qdmr/errors.hpp"

namespace qdmr {

std::string to_string(Op op) {
  switch (op) {
    case Op::kSelect:
      return "SELECT";
    case Op::kProject:
      return "PROJECT";
    case Op::kComparative:
      return "COMPARATIVE";
    case Op::kSuperlative:
      return "SUPERLATIVE";
    case Op::kAggregate:
      return "AGGREGATE";
    case Op::kGroup:
      return "GROUP";
    case Op::kUnion:
      return "UNION";
    case Op::kIntersect:
      return "INTERSECT";
    case Op::kDiscard:
      return "DISCARD";
    case Op::kSort:
      return "SORT";
  }
  return "SELECT";
}

std::string to_string(Comparator c) {
  switch (c) {
    case Comparator::kEq:
      return "=";
    case Comparator::kNe:
      return "!=";
    case Comparator::kGt:
      return ">";
    case Comparator::kLt:
      return "<";
    case Comparator::kGe:
      return ">=";
    case Comparator::kLe:
      return "<=";
    case Comparator::kLike:
      return "like";
  }
  return "=";
}

std::string to_string(Aggregator a) {
  switch (a) {
    case Aggregator::kCount:
      return "count";
    case Aggregator::kSum:
      return "sum";
    case Aggregator::kAvg:
      return "avg";
    case Aggregator::kMin:
      return "min";
    case Aggregator::kMax:
      return "max";
  }
  return "count";
}

std::string to_string(SortDirection d) {
  return d == SortDirection::kAsc ? "asc" : "desc";
}

std::vector<int> step_refs(const Step& step) {
  std::vector<int> out;
  auto add = [&out](const StepRef& r) { out.push_back(r.index); };
  std::visit(
      [&](const auto& args) {
        using T = std::decay_t<decltype(args)>;
        if constexpr (std::is_same_v<T, SelectArgs>) {
          (void)args;
        } else if constexpr (std::is_same_v<T, ProjectArgs>) {
          add(args.subject);
        } else if constexpr (std::is_same_v<T, ComparativeArgs>) {
          add(args.subject);
          add(args.attribute);
          if (const StepRef* r = std::get_if<StepRef>(&args.operand)) add(*r);
        } else if constexpr (std::is_same_v<T, SuperlativeArgs>) {
          add(args.subject);
          add(args.attribute);
        } else if constexpr (std::is_same_v<T, AggregateArgs>) {
          add(args.subject);
        } else if constexpr (std::is_same_v<T, GroupArgs>) {
          add(args.values);
          add(args.key);
        } else if constexpr (std::is_same_v<T, UnionArgs>) {
          for (const StepRef& r : args.parts) add(r);
        } else if constexpr (std::is_same_v<T, IntersectArgs>) {
          add(args.projection);
          add(args.left);
          add(args.right);
        } else if constexpr (std::is_same_v<T, DiscardArgs>) {
          add(args.from);
          add(args.exclude);
        } else if constexpr (std::is_same_v<T, SortArgs>) {
          add(args.subject);
          add(args.key);
        }
      },
      step.args);
  return out;
}

namespace {

bool needs_quotes(const std::string& lexical, Datatype type) {
  if (type == Datatype::kText) return true;
  return lexical.find_first_of(",@#[]\" ") != std::string::npos;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string grounding_to_string(const Grounding& g) {
  if (const TableRef* t = std::get_if<TableRef>(&g)) return t->table;
  if (const ColumnRef* c = std::get_if<ColumnRef>(&g))
    return c->table + "." + c->column;
  const ValueRef& v = std::get<ValueRef>(g);
  std::string out =
      needs_quotes(v.lexical, v.datatype) ? quote(v.lexical) : v.lexical;
  if (v.source_column)
    out += "@" + v.source_column->table + "." + v.source_column->column;
  return out;
}

std::string aggregator_slot_to_string(const AggregatorSlot& slot) {
  if (const Aggregator* a = std::get_if<Aggregator>(&slot)) return to_string(*a);
  return grounding_to_string(std::get<Grounding>(slot));
}

std::string ref_to_string(const StepRef& r) {
  return "#" + std::to_string(r.index);
}

}  // namespace

std::string serialize(const Step& step) {
  std::ostringstream out;
  out << '#' << step.index << ' ' << to_string(step.op) << '[';
  std::vector<std::string> args;
  bool distinct = false;
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, SelectArgs>) {
          args.push_back(grounding_to_string(a.subject));
          distinct = a.distinct;
        } else if constexpr (std::is_same_v<T, ProjectArgs>) {
          args.push_back(grounding_to_string(a.projection));
          args.push_back(ref_to_string(a.subject));
          distinct = a.distinct;
        } else if constexpr (std::is_same_v<T, ComparativeArgs>) {
          args.push_back(ref_to_string(a.subject));
          args.push_back(ref_to_string(a.attribute));
          std::string operand;
          if (a.comparator) {
            operand = to_string(*a.comparator);
            if (*a.comparator == Comparator::kLike) operand += ' ';
          }
          if (const Grounding* g = std::get_if<Grounding>(&a.operand)) {
            operand += grounding_to_string(*g);
          } else if (const StepRef* r = std::get_if<StepRef>(&a.operand)) {
            operand += ref_to_string(*r);
          }
          if (!operand.empty()) args.push_back(operand);
          distinct = a.distinct;
        } else if constexpr (std::is_same_v<T, SuperlativeArgs>) {
          args.push_back(to_string(a.op));
          args.push_back(ref_to_string(a.subject));
          args.push_back(ref_to_string(a.attribute));
        } else if constexpr (std::is_same_v<T, AggregateArgs>) {
          args.push_back(aggregator_slot_to_string(a.op));
          args.push_back(ref_to_string(a.subject));
        } else if constexpr (std::is_same_v<T, GroupArgs>) {
          args.push_back(aggregator_slot_to_string(a.op));
          args.push_back(ref_to_string(a.values));
          args.push_back(ref_to_string(a.key));
        } else if constexpr (std::is_same_v<T, UnionArgs>) {
          for (const StepRef& r : a.parts) args.push_back(ref_to_string(r));
        } else if constexpr (std::is_same_v<T, IntersectArgs>) {
          args.push_back(ref_to_string(a.projection));
          args.push_back(ref_to_string(a.left));
          args.push_back(ref_to_string(a.right));
        } else if constexpr (std::is_same_v<T, DiscardArgs>) {
          args.push_back(ref_to_string(a.from));
          args.push_back(ref_to_string(a.exclude));
        } else if constexpr (std::is_same_v<T, SortArgs>) {
          args.push_back(ref_to_string(a.subject));
          args.push_back(ref_to_string(a.key));
          args.push_back(to_string(a.direction));
        }
      },
      step.args);
  if (distinct) args.push_back("distinct");
  for (size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out << ", ";
    out << args[i];
  }
  out << ']';
  return out.str();
}

std::string serialize(const GroundedQdmr& q) {
  std::ostringstream out;
  for (size_t i = 0; i < q.steps.size(); ++i) {
    if (i > 0) out << '\n';
    out << serialize(q.steps[i]);
  }
  return out.str();
}

std::vector<int> dependency_order(const GroundedQdmr& q) {
  size_t n = q.steps.size();
  std::vector<std::vector<int>> dependents(n + 1);
  std::vector<int> pending(n + 1, 0);
  for (const Step& s : q.steps) {
    std::vector<int> refs = step_refs(s);
    std::sort(refs.begin(), refs.end());
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    pending[s.index] = static_cast<int>(refs.size());
    for (int r : refs) dependents[r].push_back(s.index);
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (const Step& s : q.steps) {
    if (pending[s.index] == 0) ready.push(s.index);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int i = ready.top();
    ready.pop();
    order.push_back(i);
    for (int d : dependents[i]) {
      if (--pending[d] == 0) ready.push(d);
    }
  }
  if (order.size() != n) throw MisuseError("dependency cycle in decomposition");
  return order;
}

}  // namespace qdmr
