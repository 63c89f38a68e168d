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

#include "qdmr/transpiler.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "qdmr/errors.hpp"
#include "qdmr/rdf_graph.hpp"
#include "qdmr/validation.hpp"

namespace qdmr {

namespace {

// One output column of a realized step inside a graph pattern.
struct BoundColumn {
  Var var;
  std::optional<Var> row_var;  // node variable of the row carrying the value
  std::optional<ColumnRef> column;
  std::optional<Aggregator> aggregate;
  bool whole_row = false;  // var binds row nodes rather than cell literals
};

struct Binding {
  std::vector<BoundColumn> cols;

  const BoundColumn& primary() const { return cols.front(); }
};

struct Context {
  GroupGraphPattern pattern;
  std::map<int, Binding> realized;
};

class NameAllocator {
 public:
  Var allocate(const std::string& base) {
    std::string name = sanitize(base);
    int& n = used_[name];
    ++n;
    if (n == 1) return Var{name};
    return Var{name + "_" + std::to_string(n)};
  }

 private:
  static std::string sanitize(const std::string& base) {
    std::string out;
    for (char c : base) {
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back(c);
      } else {
        out.push_back('_');
      }
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])))
      out.insert(out.begin(), 'v');
    return out;
  }

  std::map<std::string, int> used_;
};

void rename_in_pattern(GroupGraphPattern& p, const std::string& from,
                       const std::string& to);

void rename_in_query(SelectQuery& q, const std::string& from,
                     const std::string& to) {
  auto fix = [&](Var& v) {
    if (v.name == from) v.name = to;
  };
  for (ProjectionItem& item : q.projection) {
    if (Var* v = std::get_if<Var>(&item.expr)) fix(*v);
    if (AggExpr* a = std::get_if<AggExpr>(&item.expr)) fix(a->arg);
    if (item.alias) fix(*item.alias);
  }
  rename_in_pattern(q.where, from, to);
  for (Var& v : q.group_by) fix(v);
  if (q.order_by) fix(q.order_by->var);
}

void rename_in_pattern(GroupGraphPattern& p, const std::string& from,
                       const std::string& to) {
  auto fix = [&](Var& v) {
    if (v.name == from) v.name = to;
  };
  for (GraphElement& e : p.elements) {
    std::visit(
        [&](auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, TriplePattern>) {
            fix(node.subject);
            if (Var* v = std::get_if<Var>(&node.object)) fix(*v);
          } else if constexpr (std::is_same_v<T, FilterExpr>) {
            fix(node.lhs);
            if (Var* v = std::get_if<Var>(&node.rhs)) fix(*v);
          } else if constexpr (std::is_same_v<T, UnionExpr>) {
            for (GroupGraphPattern& b : node.branches)
              rename_in_pattern(b, from, to);
          } else if constexpr (std::is_same_v<T, MinusExpr>) {
            rename_in_pattern(node.pattern.front(), from, to);
          } else if constexpr (std::is_same_v<T, SubSelect>) {
            auto copy = std::make_shared<SelectQuery>(*node.query);
            rename_in_query(*copy, from, to);
            node.query = std::move(copy);
          }
        },
        e.node);
  }
}

FilterOp filter_op(Comparator c) {
  switch (c) {
    case Comparator::kEq:
      return FilterOp::kEq;
    case Comparator::kNe:
      return FilterOp::kNe;
    case Comparator::kGt:
      return FilterOp::kGt;
    case Comparator::kLt:
      return FilterOp::kLt;
    case Comparator::kGe:
      return FilterOp::kGe;
    case Comparator::kLe:
      return FilterOp::kLe;
    case Comparator::kLike:
      return FilterOp::kContains;
  }
  return FilterOp::kEq;
}

class Builder {
 public:
  Builder(const GroundedQdmr& q, const Schema& schema)
      : q_(q), schema_(schema), graph_(schema) {}

  SparqlQuery build() {
    if (q_.steps.empty()) throw MisuseError("empty decomposition");
    Context root;
    int out_index = static_cast<int>(q_.steps.size());
    Binding out = realize(out_index, root);

    SelectQuery top;
    top.where = std::move(root.pattern);
    top.distinct = step_distinct(q_.step(out_index));
    for (const BoundColumn& col : out.cols) {
      top.projection.push_back({col.var, std::nullopt});
    }
    if (pending_sort_ && pending_sort_->step == out_index) {
      top.order_by = OrderKey{pending_sort_->key, pending_sort_->direction};
    }

    SelectQuery lifted = lift(std::move(top));

    SparqlQuery result;
    result.ast = std::move(lifted);
    result.text = serialize_sparql(result.ast);
    for (const BoundColumn& col : out.cols) {
      result.outputs.push_back({col.var.name, col.column, col.aggregate});
    }
    return result;
  }

 private:
  // Collapses SELECT vars WHERE { { subquery } } into the subquery when
  // the projections agree, so aggregate-rooted decompositions serialize
  // in their natural single-query form.
  static SelectQuery lift(SelectQuery top) {
    if (top.distinct || !top.group_by.empty()) return top;
    if (top.where.elements.size() != 1) return top;
    SubSelect* sub = std::get_if<SubSelect>(&top.where.elements[0].node);
    if (sub == nullptr) return top;
    const SelectQuery& inner = *sub->query;
    if (inner.projection.size() != top.projection.size()) return top;
    for (size_t i = 0; i < top.projection.size(); ++i) {
      const Var* v = std::get_if<Var>(&top.projection[i].expr);
      if (v == nullptr || !(*v == inner.projection[i].output_var())) return top;
    }
    SelectQuery out = inner;
    if (top.order_by) out.order_by = top.order_by;
    return out;
  }

  const Table& table_at(size_t ti) const { return schema_.tables()[ti]; }

  size_t require_table(const std::string& name) const {
    auto ti = schema_.table_index(name);
    if (!ti) throw UnknownEntityError("unknown table: " + name);
    return *ti;
  }

  ColumnId resolve(const ColumnRef& ref) const {
    size_t ti = require_table(ref.table);
    auto ci = table_at(ti).column_index(ref.column);
    if (!ci)
      throw UnknownEntityError("unknown column: " + ref.table + "." +
                               ref.column);
    return {ti, *ci};
  }

  size_t pk_index(size_t ti) const {
    auto pk = table_at(ti).primary_key_index();
    if (!pk)
      throw UnsupportedShapeError("table " + table_at(ti).name +
                                  " has no single-column key; run ensure_key");
    return *pk;
  }

  ColumnRef column_ref(ColumnId id) const {
    return {table_at(id.table).name, table_at(id.table).columns[id.column].name};
  }

  bool is_pk(ColumnId id) const { return id.column == pk_index(id.table); }

  static bool step_distinct(const Step& s) {
    if (const SelectArgs* a = std::get_if<SelectArgs>(&s.args))
      return a->distinct;
    if (const ProjectArgs* a = std::get_if<ProjectArgs>(&s.args))
      return a->distinct;
    if (const ComparativeArgs* a = std::get_if<ComparativeArgs>(&s.args))
      return a->distinct;
    return false;
  }

  void emit(Context& ctx, TriplePattern t) {
    ctx.pattern.elements.push_back({std::move(t)});
  }

  void emit(Context& ctx, FilterExpr f) {
    ctx.pattern.elements.push_back({std::move(f)});
  }

  // The node variable of the row carrying this column's values, emitting
  // a fresh anchoring triple when the binding arrived value-only (e.g.
  // adopted from a subquery export).
  Var ensure_row(Context& ctx, BoundColumn& col) {
    if (col.whole_row) return col.var;
    if (col.row_var) return *col.row_var;
    if (!col.column)
      throw UnsupportedShapeError("cannot join on an aggregate output");
    ColumnId id = resolve(*col.column);
    Var row = names_.allocate(table_at(id.table).columns[pk_index(id.table)].name);
    emit(ctx, {row, attribute_arc(col.column->table, col.column->column),
               col.var});
    col.row_var = row;
    return row;
  }

  // Emits the join-path triples from an anchored column to a target
  // column and returns the terminal binding.
  BoundColumn walk(Context& ctx, BoundColumn& anchor, ColumnId target) {
    if (!anchor.column)
      throw UnsupportedShapeError("cannot project from an aggregate output");
    ColumnId from = resolve(*anchor.column);
    if (from == target) return anchor;

    JoinPath path = graph_.join_path(from, target);
    Var row = ensure_row(ctx, anchor);
    for (const JoinEdge& e : path.edges) {
      if (e.kind != JoinEdge::Kind::kForeignKey) continue;
      const Table& declaring = table_at(e.fk_table);
      const ForeignKey& fk = declaring.foreign_keys[e.fk_index];
      std::string arc = relation_arc(declaring.name, fk);
      size_t next_table = e.to.table;
      Var next_row =
          names_.allocate(table_at(next_table).columns[pk_index(next_table)].name);
      if (e.forward) {
        emit(ctx, {row, arc, next_row});
      } else {
        emit(ctx, {next_row, arc, row});
      }
      row = next_row;
    }

    BoundColumn out;
    out.column = column_ref(target);
    if (is_pk(target)) {
      out.var = row;
      out.row_var = row;
      out.whole_row = true;
    } else {
      out.var = names_.allocate(table_at(target.table).columns[target.column].name);
      out.row_var = row;
      emit(ctx, {row, attribute_arc(out.column->table, out.column->column),
                 out.var});
    }
    return out;
  }

  // Target column of an entity grounding: a table resolves to its key.
  ColumnId grounding_target(const Grounding& g) const {
    if (const TableRef* t = std::get_if<TableRef>(&g)) {
      size_t ti = require_table(t->table);
      return {ti, pk_index(ti)};
    }
    if (const ColumnRef* c = std::get_if<ColumnRef>(&g)) return resolve(*c);
    throw UnsupportedShapeError("expected a table or column grounding");
  }

  Binding realize(int index, Context& ctx) {
    auto it = ctx.realized.find(index);
    if (it != ctx.realized.end()) return it->second;
    const Step& s = q_.step(index);
    Binding b;
    switch (s.op) {
      case Op::kSelect:
        b = realize_select(std::get<SelectArgs>(s.args), ctx);
        break;
      case Op::kProject: {
        const ProjectArgs& a = std::get<ProjectArgs>(s.args);
        b = realize_projection(a.projection, a.subject.index, ctx);
        break;
      }
      case Op::kComparative:
        b = realize_comparative(std::get<ComparativeArgs>(s.args), ctx);
        break;
      case Op::kSuperlative:
        b = realize_superlative(std::get<SuperlativeArgs>(s.args), ctx);
        break;
      case Op::kAggregate: {
        const AggregateArgs& a = std::get<AggregateArgs>(s.args);
        if (const Grounding* g = std::get_if<Grounding>(&a.op)) {
          b = realize_projection(*g, a.subject.index, ctx);
        } else {
          b = realize_aggregate(std::get<Aggregator>(a.op), a.subject.index,
                                ctx);
        }
        break;
      }
      case Op::kGroup: {
        const GroupArgs& a = std::get<GroupArgs>(s.args);
        if (const Grounding* g = std::get_if<Grounding>(&a.op)) {
          b = realize_projection(*g, a.key.index, ctx);
        } else {
          b = realize_group(std::get<Aggregator>(a.op), a.values.index,
                            a.key.index, ctx);
        }
        break;
      }
      case Op::kUnion:
        b = realize_union(std::get<UnionArgs>(s.args), ctx);
        break;
      case Op::kIntersect: {
        const IntersectArgs& a = std::get<IntersectArgs>(s.args);
        realize(a.left.index, ctx);
        realize(a.right.index, ctx);
        b = realize(a.projection.index, ctx);
        break;
      }
      case Op::kDiscard:
        b = realize_discard(std::get<DiscardArgs>(s.args), ctx);
        break;
      case Op::kSort: {
        const SortArgs& a = std::get<SortArgs>(s.args);
        Binding sb = realize(a.subject.index, ctx);
        Binding kb = realize(a.key.index, ctx);
        pending_sort_ = PendingSort{index, kb.primary().var, a.direction};
        b = sb;
        break;
      }
    }
    ctx.realized[index] = b;
    return b;
  }

  Binding realize_select(const SelectArgs& a, Context& ctx) {
    if (std::holds_alternative<ValueRef>(a.subject))
      throw UnsupportedShapeError("SELECT of a bare value");
    ColumnId id = grounding_target(a.subject);
    const Table& t = table_at(id.table);
    BoundColumn col;
    col.column = column_ref(id);
    if (is_pk(id)) {
      Var node = names_.allocate(t.columns[id.column].name);
      emit(ctx, {node, attribute_arc(t.name, t.columns[id.column].name), node});
      col.var = node;
      col.row_var = node;
      col.whole_row = true;
    } else {
      Var row = names_.allocate(t.columns[pk_index(id.table)].name);
      Var val = names_.allocate(t.columns[id.column].name);
      emit(ctx, {row, attribute_arc(t.name, t.columns[id.column].name), val});
      col.var = val;
      col.row_var = row;
    }
    return Binding{{col}};
  }

  Binding realize_projection(const Grounding& g, int subject, Context& ctx) {
    if (std::holds_alternative<ValueRef>(g))
      throw UnsupportedShapeError("projection target must be a table or column");
    Binding sb = realize(subject, ctx);
    if (sb.cols.size() != 1)
      throw UnsupportedShapeError("cannot project from a multi-column step");
    ColumnId target = grounding_target(g);
    BoundColumn out = walk(ctx, ctx.realized.at(subject).cols[0], target);
    return Binding{{out}};
  }

  Binding realize_comparative(const ComparativeArgs& a, Context& ctx) {
    Binding sb = realize(a.subject.index, ctx);
    Binding ab = realize(a.attribute.index, ctx);
    if (ab.cols.size() != 1)
      throw UnsupportedShapeError("comparison against a multi-column step");
    BoundColumn& attr = ctx.realized.at(a.attribute.index).cols[0];

    if (std::holds_alternative<std::monostate>(a.operand)) return sb;

    if (const StepRef* r = std::get_if<StepRef>(&a.operand)) {
      Binding rb = realize(r->index, ctx);
      if (rb.cols.size() != 1)
        throw UnsupportedShapeError("comparison against a multi-column step");
      FilterOp op = a.comparator ? filter_op(*a.comparator) : FilterOp::kEq;
      emit(ctx, FilterExpr{op, attr.var, rb.primary().var});
      return sb;
    }

    const Grounding& g = std::get<Grounding>(a.operand);
    if (const ValueRef* v = std::get_if<ValueRef>(&g)) {
      auto literal = parse_as(v->datatype, v->lexical);
      if (!literal)
        throw UnsupportedShapeError("operand '" + v->lexical +
                                    "' is not a valid " +
                                    to_string(v->datatype));
      Var target_var = attr.var;
      if (v->source_column) {
        ColumnId target = resolve(*v->source_column);
        BoundColumn end = walk(ctx, attr, target);
        target_var = end.var;
      }
      if (a.comparator && *a.comparator == Comparator::kLike) {
        emit(ctx, FilterExpr{FilterOp::kContains, target_var,
                             Value::text(literal->lexical())});
      } else {
        FilterOp op = a.comparator ? filter_op(*a.comparator) : FilterOp::kEq;
        emit(ctx, FilterExpr{op, target_var, *literal});
      }
      return sb;
    }

    // Entity operand: relate the attribute to the entity via a join path;
    // with a comparator, additionally compare the endpoint values.
    ColumnId target = grounding_target(g);
    BoundColumn end = walk(ctx, attr, target);
    if (a.comparator) {
      emit(ctx, FilterExpr{filter_op(*a.comparator), attr.var, end.var});
    }
    return sb;
  }

  Binding realize_superlative(const SuperlativeArgs& a, Context& ctx) {
    // Attribute first: a grouped attribute exports its key, so a subject
    // that is the group key binds through the grouped rows instead of
    // multiplying them back out by the raw pattern.
    Binding ab = realize(a.attribute.index, ctx);
    Binding sb = realize(a.subject.index, ctx);
    if (ab.cols.size() != 1)
      throw UnsupportedShapeError("superlative over a multi-column step");

    Context inner;
    Binding ib = realize(a.attribute.index, inner);
    if (ib.cols.size() != 1)
      throw UnsupportedShapeError("superlative over a multi-column step");

    auto threshold = std::make_shared<SelectQuery>();
    Var mm = names_.allocate(to_string(a.op) + "_" + ib.primary().var.name);
    threshold->projection.push_back(
        {AggExpr{a.op, false, ib.primary().var}, mm});
    threshold->where = std::move(inner.pattern);

    ctx.pattern.elements.push_back({SubSelect{threshold}});
    emit(ctx, FilterExpr{FilterOp::kEq, ab.primary().var, mm});
    return sb;
  }

  Binding realize_aggregate(Aggregator op, int subject, Context& ctx) {
    Context child;
    Binding sb = realize(subject, child);

    auto agg_query = std::make_shared<SelectQuery>();
    Var out = names_.allocate(to_string(op));
    bool distinct = step_distinct(q_.step(subject));
    agg_query->projection.push_back(
        {AggExpr{op, distinct, sb.primary().var}, out});
    agg_query->where = std::move(child.pattern);

    ctx.pattern.elements.push_back({SubSelect{agg_query}});
    BoundColumn col;
    col.var = out;
    col.aggregate = op;
    return Binding{{col}};
  }

  Binding realize_group(Aggregator op, int values, int key, Context& ctx) {
    Context child;
    Binding vb = realize(values, child);
    Binding kb = realize(key, child);
    if (vb.cols.size() != 1 || kb.cols.size() != 1)
      throw UnsupportedShapeError("grouping over a multi-column step");

    auto grouped = std::make_shared<SelectQuery>();
    Var agg_var = names_.allocate(to_string(op));
    bool distinct = step_distinct(q_.step(values));
    grouped->projection.push_back({kb.primary().var, std::nullopt});
    grouped->projection.push_back(
        {AggExpr{op, distinct, vb.primary().var}, agg_var});
    grouped->where = std::move(child.pattern);
    grouped->group_by.push_back(kb.primary().var);

    // Join the exported key with the enclosing context: reuse its variable
    // when the key step is already realized there, adopt it otherwise.
    auto existing = ctx.realized.find(key);
    if (existing != ctx.realized.end()) {
      rename_in_query(*grouped, kb.primary().var.name,
                      existing->second.primary().var.name);
    } else {
      BoundColumn exported;
      exported.var = kb.primary().var;
      exported.column = kb.primary().column;
      exported.whole_row = kb.primary().whole_row;
      if (exported.whole_row) exported.row_var = exported.var;
      ctx.realized[key] = Binding{{exported}};
    }

    ctx.pattern.elements.push_back({SubSelect{grouped}});
    BoundColumn col;
    col.var = agg_var;
    col.aggregate = op;
    return Binding{{col}};
  }

  bool is_scalar_aggregate(int index) const {
    const Step& s = q_.step(index);
    if (s.op != Op::kAggregate) return false;
    return std::holds_alternative<Aggregator>(
        std::get<AggregateArgs>(s.args).op);
  }

  Binding realize_union(const UnionArgs& a, Context& ctx) {
    // Value union: every part draws from the same column.
    std::optional<ColumnRef> common;
    bool vertical = true;
    for (const StepRef& r : a.parts) {
      auto col = output_column(q_, schema_, r.index);
      if (!col) {
        vertical = false;
        break;
      }
      if (common && !(*common == *col)) {
        vertical = false;
        break;
      }
      common = col;
    }
    if (vertical && common) return realize_vertical_union(a, *common, ctx);

    // Aggregates of one shared subject combine into a single subquery.
    bool all_scalar = true;
    for (const StepRef& r : a.parts) {
      if (!is_scalar_aggregate(r.index)) {
        all_scalar = false;
        break;
      }
    }
    if (all_scalar) {
      int subject =
          std::get<AggregateArgs>(q_.step(a.parts[0].index).args).subject.index;
      bool shared = true;
      for (const StepRef& r : a.parts) {
        if (std::get<AggregateArgs>(q_.step(r.index).args).subject.index !=
            subject) {
          shared = false;
          break;
        }
      }
      if (shared) return realize_aggregate_row(a, subject, ctx);
    }

    // Attribute union: one shared context, one output column per part.
    // Grouped parts realize first so their exported keys satisfy the
    // plain parts instead of joining against duplicated patterns.
    std::vector<int> order;
    for (const StepRef& r : a.parts) {
      if (q_.step(r.index).op == Op::kGroup) order.push_back(r.index);
    }
    for (const StepRef& r : a.parts) {
      if (q_.step(r.index).op != Op::kGroup) order.push_back(r.index);
    }
    for (int idx : order) realize(idx, ctx);

    Binding out;
    for (const StepRef& r : a.parts) {
      Binding pb = ctx.realized.at(r.index);
      for (const BoundColumn& col : pb.cols) out.cols.push_back(col);
    }
    return out;
  }

  Binding realize_vertical_union(const UnionArgs& a, const ColumnRef& common,
                                 Context& ctx) {
    Var shared = names_.allocate(column_name_base(common));
    UnionExpr un;
    bool whole_row = true;
    for (const StepRef& r : a.parts) {
      Context branch;
      Binding pb = realize(r.index, branch);
      if (pb.cols.size() != 1)
        throw UnsupportedShapeError("union branch with multiple columns");
      whole_row = whole_row && pb.primary().whole_row;

      auto branch_query = std::make_shared<SelectQuery>();
      branch_query->projection.push_back({pb.primary().var, std::nullopt});
      branch_query->where = std::move(branch.pattern);
      rename_in_query(*branch_query, pb.primary().var.name, shared.name);

      GroupGraphPattern wrapper;
      wrapper.elements.push_back({SubSelect{branch_query}});
      un.branches.push_back(std::move(wrapper));
    }
    ctx.pattern.elements.push_back({std::move(un)});

    BoundColumn col;
    col.var = shared;
    col.column = common;
    col.whole_row = whole_row;
    if (whole_row) col.row_var = shared;
    return Binding{{col}};
  }

  // One subquery computing several aggregates of the same subject:
  // SELECT (MAX(?x) AS ?a) (MIN(?x) AS ?b) WHERE { ... }.
  Binding realize_aggregate_row(const UnionArgs& a, int subject, Context& ctx) {
    Context child;
    Binding sb = realize(subject, child);
    bool distinct = step_distinct(q_.step(subject));

    auto agg_query = std::make_shared<SelectQuery>();
    Binding out;
    for (const StepRef& r : a.parts) {
      Aggregator op =
          std::get<Aggregator>(std::get<AggregateArgs>(q_.step(r.index).args).op);
      Var var = names_.allocate(to_string(op));
      agg_query->projection.push_back(
          {AggExpr{op, distinct, sb.primary().var}, var});
      BoundColumn col;
      col.var = var;
      col.aggregate = op;
      out.cols.push_back(col);
      ctx.realized[r.index] = Binding{{col}};
    }
    agg_query->where = std::move(child.pattern);
    ctx.pattern.elements.push_back({SubSelect{agg_query}});
    return out;
  }

  Binding realize_discard(const DiscardArgs& a, Context& ctx) {
    Binding fb = realize(a.from.index, ctx);
    if (fb.cols.size() != 1)
      throw UnsupportedShapeError("DISCARD from a multi-column step");

    Context excluded;
    Binding eb = realize(a.exclude.index, excluded);
    if (eb.cols.size() != 1)
      throw UnsupportedShapeError("DISCARD of a multi-column step");

    auto exclude_query = std::make_shared<SelectQuery>();
    exclude_query->projection.push_back({eb.primary().var, std::nullopt});
    exclude_query->where = std::move(excluded.pattern);
    rename_in_query(*exclude_query, eb.primary().var.name,
                    fb.primary().var.name);

    GroupGraphPattern minus_body;
    minus_body.elements.push_back({SubSelect{exclude_query}});
    MinusExpr minus;
    minus.pattern.push_back(std::move(minus_body));
    ctx.pattern.elements.push_back({std::move(minus)});
    return fb;
  }

  std::string column_name_base(const ColumnRef& ref) const {
    return ref.column;
  }

  struct PendingSort {
    int step;
    Var key;
    SortDirection direction;
  };

  const GroundedQdmr& q_;
  const Schema& schema_;
  SchemaGraph graph_;
  NameAllocator names_;
  std::optional<PendingSort> pending_sort_;
};

}  // namespace

SparqlQuery transpile(const GroundedQdmr& q, const Schema& schema) {
  return Builder(q, schema).build();
}

}  // namespace qdmr
