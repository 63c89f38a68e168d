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

#include "qdmr/validation.hpp"

#include <sstream>

#include "qdmr/errors.hpp"

namespace qdmr {

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const Violation& v : violations) {
    out << "step " << v.step << " [" << v.rule << "] " << v.message << '\n';
  }
  return out.str();
}

namespace {

std::optional<ColumnRef> grounding_column(const Grounding& g,
                                          const Schema& schema) {
  if (const ColumnRef* c = std::get_if<ColumnRef>(&g)) return *c;
  if (const TableRef* t = std::get_if<TableRef>(&g)) {
    const Table* table = schema.find_table(t->table);
    if (table && table->has_primary_key())
      return ColumnRef{table->name, table->primary_key};
    return std::nullopt;
  }
  const ValueRef& v = std::get<ValueRef>(g);
  return v.source_column;
}

bool aggregator_yields_number(Aggregator a) {
  return a == Aggregator::kCount || a == Aggregator::kSum ||
         a == Aggregator::kAvg;
}

std::vector<const Grounding*> step_groundings(const Step& s) {
  std::vector<const Grounding*> out;
  std::visit(
      [&](const auto& args) {
        using T = std::decay_t<decltype(args)>;
        if constexpr (std::is_same_v<T, SelectArgs>) {
          out.push_back(&args.subject);
        } else if constexpr (std::is_same_v<T, ProjectArgs>) {
          out.push_back(&args.projection);
        } else if constexpr (std::is_same_v<T, ComparativeArgs>) {
          if (const Grounding* g = std::get_if<Grounding>(&args.operand))
            out.push_back(g);
        } else if constexpr (std::is_same_v<T, AggregateArgs>) {
          if (const Grounding* g = std::get_if<Grounding>(&args.op))
            out.push_back(g);
        } else if constexpr (std::is_same_v<T, GroupArgs>) {
          if (const Grounding* g = std::get_if<Grounding>(&args.op))
            out.push_back(g);
        }
      },
      s.args);
  return out;
}

class Checker {
 public:
  Checker(const GroundedQdmr& q, const Schema& schema, const TableData* data)
      : q_(q), schema_(schema), data_(data) {}

  ValidationReport run() {
    check_structure();
    if (structure_ok_) {
      for (const Step& s : q_.steps) check_step(s);
    }
    return std::move(report_);
  }

 private:
  void add(int step, const std::string& rule, const std::string& message) {
    report_.violations.push_back({step, rule, message});
  }

  void check_structure() {
    if (q_.steps.empty()) {
      add(0, "structure", "decomposition has no steps");
      structure_ok_ = false;
      return;
    }
    for (size_t i = 0; i < q_.steps.size(); ++i) {
      const Step& s = q_.steps[i];
      if (s.index != static_cast<int>(i) + 1) {
        add(s.index, "structure",
            "step numbering is not contiguous from 1");
        structure_ok_ = false;
        return;
      }
    }
    for (const Step& s : q_.steps) {
      for (int r : step_refs(s)) {
        if (r < 1 || r >= s.index) {
          add(s.index, "structure",
              "reference #" + std::to_string(r) +
                  " does not point to an earlier step");
          structure_ok_ = false;
          return;
        }
      }
    }
    std::vector<bool> reachable(q_.steps.size() + 1, false);
    std::vector<int> stack = {static_cast<int>(q_.steps.size())};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      if (reachable[i]) continue;
      reachable[i] = true;
      for (int r : step_refs(q_.step(i))) stack.push_back(r);
    }
    for (const Step& s : q_.steps) {
      if (!reachable[s.index])
        add(s.index, "structure",
            "step does not contribute to the final step");
    }
  }

  void check_step(const Step& s) {
    // Aggregation slots grounded to something other than a column.
    const AggregatorSlot* slot = nullptr;
    if (const AggregateArgs* a = std::get_if<AggregateArgs>(&s.args))
      slot = &a->op;
    if (const GroupArgs* g = std::get_if<GroupArgs>(&s.args)) slot = &g->op;
    if (slot != nullptr) {
      if (const Grounding* g = std::get_if<Grounding>(slot)) {
        if (!std::holds_alternative<ColumnRef>(*g))
          add(s.index, "aggregator-grounding",
              "aggregation slot must be an aggregator or a column");
      }
    }

    for (const Grounding* g : step_groundings(s)) {
      if (const ValueRef* v = std::get_if<ValueRef>(g)) check_value(s, *v);
    }

    if (const ComparativeArgs* c = std::get_if<ComparativeArgs>(&s.args))
      check_comparative(s, *c);
  }

  void check_value(const Step& s, const ValueRef& v) {
    bool castable = true;
    if (v.source_column) {
      const Column* col =
          schema_.find_column(v.source_column->table, v.source_column->column);
      if (col == nullptr) {
        add(s.index, "value-cast",
            "source column " + v.source_column->table + "." +
                v.source_column->column + " does not exist");
        return;
      }
      auto cast = parse_as(col->type, v.lexical);
      if (!cast) {
        castable = false;
        add(s.index, "value-cast",
            "'" + v.lexical + "' is not a " + to_string(col->type) +
                ", the type of " + col->name);
      }
      if (data_ != nullptr && castable) {
        if (!value_in_column(*v.source_column, *cast) &&
            value_in_database(*cast)) {
          add(s.index, "value-provenance",
              "'" + v.lexical + "' is not a value of " +
                  v.source_column->table + "." + v.source_column->column +
                  " but occurs elsewhere in the database");
        }
      }
    } else if (data_ != nullptr) {
      auto typed = parse_as(v.datatype, v.lexical);
      if (typed && value_in_database(*typed)) {
        add(s.index, "value-unlinked",
            "'" + v.lexical +
                "' occurs in the database but has no source column");
      }
    }
  }

  void check_comparative(const Step& s, const ComparativeArgs& c) {
    if (c.comparator && *c.comparator == Comparator::kLike)
      return;  // substring matching works on lexical forms of any type
    auto attr_type = output_type(q_, schema_, c.attribute.index);
    if (!attr_type) return;
    std::optional<Datatype> operand_type;
    if (const Grounding* g = std::get_if<Grounding>(&c.operand)) {
      if (const ValueRef* v = std::get_if<ValueRef>(g))
        operand_type = v->datatype;
    } else if (const StepRef* r = std::get_if<StepRef>(&c.operand)) {
      operand_type = output_type(q_, schema_, r->index);
    }
    if (operand_type && *operand_type != *attr_type) {
      add(s.index, "comparative-type",
          "comparing " + to_string(*attr_type) + " values against a " +
              to_string(*operand_type) + " operand");
    }
  }

  bool value_in_column(const ColumnRef& col, const Value& v) {
    auto ti = schema_.table_index(col.table);
    if (!ti || *ti >= data_->table_count()) return false;
    auto ci = schema_.tables()[*ti].column_index(col.column);
    if (!ci) return false;
    for (const Row& row : data_->rows(*ti)) {
      if (row[*ci] == v) return true;
    }
    return false;
  }

  bool value_in_database(const Value& v) {
    for (size_t ti = 0; ti < schema_.tables().size() && ti < data_->table_count();
         ++ti) {
      for (const Row& row : data_->rows(ti)) {
        for (const Value& cell : row) {
          if (cell == v) return true;
        }
      }
    }
    return false;
  }

  const GroundedQdmr& q_;
  const Schema& schema_;
  const TableData* data_;
  ValidationReport report_;
  bool structure_ok_ = true;
};

}  // namespace

ValidationReport validate(const GroundedQdmr& q, const Schema& schema) {
  return Checker(q, schema, nullptr).run();
}

ValidationReport validate(const GroundedQdmr& q, const Schema& schema,
                          const TableData& data) {
  return Checker(q, schema, &data).run();
}

std::optional<ColumnRef> output_column(const GroundedQdmr& q,
                                       const Schema& schema, int step_index) {
  const Step& s = q.step(step_index);
  switch (s.op) {
    case Op::kSelect:
      return grounding_column(std::get<SelectArgs>(s.args).subject, schema);
    case Op::kProject:
      return grounding_column(std::get<ProjectArgs>(s.args).projection, schema);
    case Op::kComparative:
      return output_column(q, schema,
                           std::get<ComparativeArgs>(s.args).subject.index);
    case Op::kSuperlative:
      return output_column(q, schema,
                           std::get<SuperlativeArgs>(s.args).subject.index);
    case Op::kAggregate: {
      const AggregateArgs& a = std::get<AggregateArgs>(s.args);
      if (const Grounding* g = std::get_if<Grounding>(&a.op))
        return grounding_column(*g, schema);
      return std::nullopt;
    }
    case Op::kGroup: {
      const GroupArgs& g = std::get<GroupArgs>(s.args);
      if (const Grounding* gr = std::get_if<Grounding>(&g.op))
        return grounding_column(*gr, schema);
      return std::nullopt;
    }
    case Op::kUnion: {
      const UnionArgs& u = std::get<UnionArgs>(s.args);
      std::optional<ColumnRef> common;
      for (const StepRef& r : u.parts) {
        auto col = output_column(q, schema, r.index);
        if (!col) return std::nullopt;
        if (common && !(*common == *col)) return std::nullopt;
        common = col;
      }
      return common;
    }
    case Op::kIntersect:
      return output_column(q, schema,
                           std::get<IntersectArgs>(s.args).projection.index);
    case Op::kDiscard:
      return output_column(q, schema, std::get<DiscardArgs>(s.args).from.index);
    case Op::kSort:
      return output_column(q, schema, std::get<SortArgs>(s.args).subject.index);
  }
  return std::nullopt;
}

std::optional<Datatype> output_type(const GroundedQdmr& q, const Schema& schema,
                                    int step_index) {
  const Step& s = q.step(step_index);
  auto from_column = [&](int idx) -> std::optional<Datatype> {
    auto col = output_column(q, schema, idx);
    if (!col) return std::nullopt;
    const Column* c = schema.find_column(col->table, col->column);
    if (c == nullptr) return std::nullopt;
    return c->type;
  };
  switch (s.op) {
    case Op::kAggregate: {
      const AggregateArgs& a = std::get<AggregateArgs>(s.args);
      if (const Aggregator* agg = std::get_if<Aggregator>(&a.op)) {
        if (aggregator_yields_number(*agg)) return Datatype::kNumber;
        return output_type(q, schema, a.subject.index);
      }
      return from_column(step_index);
    }
    case Op::kGroup: {
      const GroupArgs& g = std::get<GroupArgs>(s.args);
      if (const Aggregator* agg = std::get_if<Aggregator>(&g.op)) {
        if (aggregator_yields_number(*agg)) return Datatype::kNumber;
        return output_type(q, schema, g.values.index);
      }
      return from_column(step_index);
    }
    case Op::kUnion: {
      const UnionArgs& u = std::get<UnionArgs>(s.args);
      std::optional<Datatype> common;
      for (const StepRef& r : u.parts) {
        auto t = output_type(q, schema, r.index);
        if (!t) return std::nullopt;
        if (common && *common != *t) return std::nullopt;
        common = t;
      }
      return common;
    }
    default:
      return from_column(step_index);
  }
}

}  // namespace qdmr
