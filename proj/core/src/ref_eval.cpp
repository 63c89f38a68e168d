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

#include "qdmr/ref_eval.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qdmr/errors.hpp"
#include "qdmr/schema_graph.hpp"
#include "qdmr/validation.hpp"

namespace qdmr {

namespace {

// One bound value inside the interpreter. A binding over a table's key
// column stands for the row itself (is_node); any other binding is a
// plain value. `anchor` is the row the value was read from, used to
// continue join paths; a value that crossed a subquery-style boundary
// (aggregate/group export, union branch, discard side) loses its anchor
// and later hops re-attach it by value.
struct Instance {
  std::optional<std::pair<size_t, size_t>> anchor;  // (table, row)
  Value value;
  bool is_node = false;
};

// Identity for joins, grouping, DISTINCT and set removal: rows compare as
// rows, values by kind-collapsed lexical form, exactly like serialized
// terms in the query engine.
std::string instance_key(const Schema& schema, const Instance& in) {
  if (in.is_node) {
    return "T#" + schema.tables()[in.anchor->first].name + "\x1e" +
           in.value.lexical();
  }
  if (in.value.is_number()) return "N#" + in.value.lexical();
  return "Q#" + in.value.lexical();
}

// Bag of tuples over identified columns. Keys are interpreter-assigned
// ids; a key shared between two environments joins them on that column.
struct Env {
  std::vector<int> cols;
  std::vector<std::vector<Instance>> tuples;

  int position(int key) const {
    for (size_t i = 0; i < cols.size(); ++i) {
      if (cols[i] == key) return static_cast<int>(i);
    }
    return -1;
  }
};

Env unit_env() {
  Env e;
  e.tuples.emplace_back();
  return e;
}

struct RefCol {
  int key = 0;
  std::optional<ColumnRef> column;
  std::optional<Aggregator> aggregate;
};

struct RefBinding {
  std::vector<RefCol> cols;

  const RefCol& primary() const { return cols.front(); }
};

struct RefContext {
  Env env = unit_env();
  std::map<int, RefBinding> realized;
};

class Interpreter {
 public:
  Interpreter(const GroundedQdmr& q, const Schema& schema,
              const TableData& data)
      : q_(q), schema_(schema), data_(data), graph_(schema) {}

  ResultTable run() {
    if (q_.steps.empty()) throw MisuseError("empty decomposition");
    RefContext root;
    int out_index = static_cast<int>(q_.steps.size());
    RefBinding out = realize(out_index, root);
    return emit(root, out, out_index);
  }

 private:
  const GroundedQdmr& q_;
  const Schema& schema_;
  const TableData& data_;
  SchemaGraph graph_;
  int next_key_ = 0;
  struct PendingSort {
    int step;
    int key_col;
    SortDirection direction;
  };
  std::optional<PendingSort> pending_sort_;

  // ---- schema helpers ----

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
    return {table_at(id.table).name,
            table_at(id.table).columns[id.column].name};
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

  ColumnId grounding_target(const Grounding& g) const {
    if (const TableRef* t = std::get_if<TableRef>(&g)) {
      size_t ti = require_table(t->table);
      return {ti, pk_index(ti)};
    }
    if (const ColumnRef* c = std::get_if<ColumnRef>(&g)) return resolve(*c);
    throw UnsupportedShapeError("expected a table or column grounding");
  }

  // ---- row helpers ----

  int fresh_key() { return ++next_key_; }

  const std::vector<Row>& rows_of(size_t ti) const { return data_.rows(ti); }

  Instance node_instance(size_t ti, size_t row) const {
    Instance in;
    in.anchor = {{ti, row}};
    in.value = rows_of(ti)[row][pk_index(ti)];
    in.is_node = true;
    return in;
  }

  std::string key_of(const Instance& in) const {
    return instance_key(schema_, in);
  }

  // Cross product unless a column key is shared, in which case rows must
  // agree on that column's identity (the row-level natural join).
  void merge(RefContext& ctx, Env e) {
    std::vector<std::pair<size_t, size_t>> shared;
    for (size_t i = 0; i < ctx.env.cols.size(); ++i) {
      int j = e.position(ctx.env.cols[i]);
      if (j >= 0) shared.push_back({i, static_cast<size_t>(j)});
    }
    Env out;
    out.cols = ctx.env.cols;
    for (size_t j = 0; j < e.cols.size(); ++j) {
      if (ctx.env.position(e.cols[j]) < 0) out.cols.push_back(e.cols[j]);
    }
    std::map<std::string, std::vector<size_t>> index;
    for (size_t r = 0; r < e.tuples.size(); ++r) {
      std::string k;
      for (auto& sh : shared) {
        k += key_of(e.tuples[r][sh.second]);
        k.push_back('\x1f');
      }
      index[k].push_back(r);
    }
    for (const auto& left : ctx.env.tuples) {
      std::string k;
      for (auto& sh : shared) {
        k += key_of(left[sh.first]);
        k.push_back('\x1f');
      }
      auto it = index.find(k);
      if (it == index.end()) continue;
      for (size_t r : it->second) {
        std::vector<Instance> row = left;
        for (size_t j = 0; j < e.cols.size(); ++j) {
          if (ctx.env.position(e.cols[j]) < 0) row.push_back(e.tuples[r][j]);
        }
        out.tuples.push_back(std::move(row));
      }
    }
    ctx.env = std::move(out);
  }

  // Re-attaches anchorless values in a column to the rows that carry them,
  // multiplying tuples when several rows match. The anchors persist in the
  // environment, so later hops from the same column stay on the same row.
  void ensure_anchor(RefContext& ctx, int pos, ColumnId from) {
    bool anchored = true;
    for (const auto& t : ctx.env.tuples) {
      if (!t[static_cast<size_t>(pos)].anchor) anchored = false;
    }
    if (anchored) return;
    Env out;
    out.cols = ctx.env.cols;
    const std::vector<Row>& rows = rows_of(from.table);
    for (const auto& t : ctx.env.tuples) {
      const Instance& in = t[static_cast<size_t>(pos)];
      if (in.anchor) {
        out.tuples.push_back(t);
        continue;
      }
      for (size_t r = 0; r < rows.size(); ++r) {
        const Value& cell = rows[r][from.column];
        if (cell.is_null()) continue;
        if (cell.compare_total(in.value) != 0) continue;
        std::vector<Instance> copy = t;
        copy[static_cast<size_t>(pos)].anchor = {{from.table, r}};
        out.tuples.push_back(std::move(copy));
      }
    }
    ctx.env = std::move(out);
  }

  // Rows reachable over one foreign-key hop: the source cell must be
  // non-null and equal the referenced cell, the same condition under which
  // the graph encoding emits a relation arc.
  std::vector<size_t> follow(const JoinEdge& e, size_t row) const {
    std::vector<size_t> out;
    const Table& decl = table_at(e.fk_table);
    const ForeignKey& fk = decl.foreign_keys[e.fk_index];
    size_t src_c = *decl.column_index(fk.column);
    size_t ref_t = *schema_.table_index(fk.ref_table);
    size_t ref_c = *table_at(ref_t).column_index(fk.ref_column);
    if (e.forward) {
      const Value& v = rows_of(e.fk_table)[row][src_c];
      if (v.is_null()) return out;
      const auto& targets = rows_of(ref_t);
      for (size_t r = 0; r < targets.size(); ++r) {
        const Value& rv = targets[r][ref_c];
        if (!rv.is_null() && rv.compare_total(v) == 0) out.push_back(r);
      }
    } else {
      const Value& rv = rows_of(ref_t)[row][ref_c];
      if (rv.is_null()) return out;
      const auto& sources = rows_of(e.fk_table);
      for (size_t r = 0; r < sources.size(); ++r) {
        const Value& v = sources[r][src_c];
        if (!v.is_null() && v.compare_total(rv) == 0) out.push_back(r);
      }
    }
    return out;
  }

  // Extends every tuple along the join path from an anchored column to the
  // target column. Tuples multiply per reachable row and drop when the
  // path dead-ends or the target cell is null.
  RefCol walk(RefContext& ctx, const RefCol& anchor, ColumnId target) {
    if (!anchor.column)
      throw UnsupportedShapeError("cannot project from an aggregate output");
    ColumnId from = resolve(*anchor.column);
    if (from == target) return anchor;

    JoinPath path = graph_.join_path(from, target);
    int pos = ctx.env.position(anchor.key);
    ensure_anchor(ctx, pos, from);

    int out_key = fresh_key();
    Env out;
    out.cols = ctx.env.cols;
    out.cols.push_back(out_key);
    bool target_pk = is_pk(target);
    for (const auto& t : ctx.env.tuples) {
      std::vector<size_t> frontier = {t[static_cast<size_t>(pos)].anchor->second};
      for (const JoinEdge& e : path.edges) {
        if (e.kind != JoinEdge::Kind::kForeignKey) continue;
        std::vector<size_t> next;
        for (size_t r : frontier) {
          for (size_t n : follow(e, r)) next.push_back(n);
        }
        frontier = std::move(next);
      }
      for (size_t r : frontier) {
        Instance ti;
        if (target_pk) {
          ti = node_instance(target.table, r);
        } else {
          const Value& cell = rows_of(target.table)[r][target.column];
          if (cell.is_null()) continue;
          ti.anchor = {{target.table, r}};
          ti.value = cell;
        }
        std::vector<Instance> row = t;
        row.push_back(std::move(ti));
        out.tuples.push_back(std::move(row));
      }
    }
    ctx.env = std::move(out);

    RefCol rc;
    rc.key = out_key;
    rc.column = column_ref(target);
    return rc;
  }

  // ---- filters ----

  bool passes(const Value& lhs, Comparator cmp, const Value& rhs) const {
    if (cmp == Comparator::kLike) return lhs.contains(rhs);
    auto c = lhs.compare_query(rhs);
    if (!c) return false;  // cross-kind comparisons are false, != included
    switch (cmp) {
      case Comparator::kEq:
        return *c == 0;
      case Comparator::kNe:
        return *c != 0;
      case Comparator::kGt:
        return *c > 0;
      case Comparator::kLt:
        return *c < 0;
      case Comparator::kGe:
        return *c >= 0;
      case Comparator::kLe:
        return *c <= 0;
      case Comparator::kLike:
        return false;
    }
    return false;
  }

  void filter_against_value(RefContext& ctx, int col_key, Comparator cmp,
                            const Value& rhs) {
    int pos = ctx.env.position(col_key);
    std::vector<std::vector<Instance>> kept;
    for (auto& t : ctx.env.tuples) {
      if (passes(t[static_cast<size_t>(pos)].value, cmp, rhs)) {
        kept.push_back(std::move(t));
      }
    }
    ctx.env.tuples = std::move(kept);
  }

  void filter_against_column(RefContext& ctx, int lhs_key, Comparator cmp,
                             int rhs_key) {
    int lp = ctx.env.position(lhs_key);
    int rp = ctx.env.position(rhs_key);
    std::vector<std::vector<Instance>> kept;
    for (auto& t : ctx.env.tuples) {
      if (passes(t[static_cast<size_t>(lp)].value, cmp,
                 t[static_cast<size_t>(rp)].value)) {
        kept.push_back(std::move(t));
      }
    }
    ctx.env.tuples = std::move(kept);
  }

  // ---- aggregation ----

  std::optional<Value> compute_aggregate(
      Aggregator func, const std::vector<const Instance*>& items) const {
    switch (func) {
      case Aggregator::kCount:
        return Value::number(static_cast<double>(items.size()));
      case Aggregator::kSum:
      case Aggregator::kAvg: {
        double sum = 0;
        size_t n = 0;
        for (const Instance* in : items) {
          if (in->value.is_number()) {
            sum += in->value.as_number();
            ++n;
          }
        }
        if (func == Aggregator::kSum) return Value::number(sum);
        if (n == 0) return std::nullopt;
        return Value::number(sum / static_cast<double>(n));
      }
      case Aggregator::kMin:
      case Aggregator::kMax: {
        if (items.empty()) return std::nullopt;
        const Instance* best = items.front();
        for (const Instance* in : items) {
          int cmp = in->value.compare_total(best->value);
          if (func == Aggregator::kMin ? cmp < 0 : cmp > 0) best = in;
        }
        return best->value;
      }
    }
    return std::nullopt;
  }

  std::vector<const Instance*> collect(const Env& env, int col_key,
                                       bool distinct) const {
    int pos = env.position(col_key);
    std::vector<const Instance*> items;
    if (distinct) {
      std::set<std::string> seen;
      for (const auto& t : env.tuples) {
        const Instance& in = t[static_cast<size_t>(pos)];
        if (seen.insert(key_of(in)).second) items.push_back(&in);
      }
    } else {
      for (const auto& t : env.tuples) {
        items.push_back(&t[static_cast<size_t>(pos)]);
      }
    }
    return items;
  }

  // Values that leave their evaluation scope keep only their identity.
  static Instance exported(const Instance& in) {
    Instance out = in;
    if (!out.is_node) out.anchor.reset();
    return out;
  }

  // ---- step realization ----

  RefBinding realize(int index, RefContext& ctx) {
    auto it = ctx.realized.find(index);
    if (it != ctx.realized.end()) return it->second;
    const Step& s = q_.step(index);
    RefBinding b;
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
        RefBinding sb = realize(a.subject.index, ctx);
        RefBinding kb = realize(a.key.index, ctx);
        pending_sort_ = PendingSort{index, kb.primary().key, a.direction};
        b = sb;
        break;
      }
    }
    ctx.realized[index] = b;
    return b;
  }

  RefBinding realize_select(const SelectArgs& a, RefContext& ctx) {
    if (std::holds_alternative<ValueRef>(a.subject))
      throw UnsupportedShapeError("SELECT of a bare value");
    ColumnId id = grounding_target(a.subject);
    Env e;
    int key = fresh_key();
    e.cols.push_back(key);
    const std::vector<Row>& rows = rows_of(id.table);
    if (is_pk(id)) {
      for (size_t r = 0; r < rows.size(); ++r) {
        e.tuples.push_back({node_instance(id.table, r)});
      }
    } else {
      for (size_t r = 0; r < rows.size(); ++r) {
        const Value& cell = rows[r][id.column];
        if (cell.is_null()) continue;
        Instance in;
        in.anchor = {{id.table, r}};
        in.value = cell;
        e.tuples.push_back({std::move(in)});
      }
    }
    merge(ctx, std::move(e));
    RefCol rc;
    rc.key = key;
    rc.column = column_ref(id);
    return RefBinding{{rc}};
  }

  RefBinding realize_projection(const Grounding& g, int subject,
                                RefContext& ctx) {
    if (std::holds_alternative<ValueRef>(g))
      throw UnsupportedShapeError("projection target must be a table or column");
    RefBinding sb = realize(subject, ctx);
    if (sb.cols.size() != 1)
      throw UnsupportedShapeError("cannot project from a multi-column step");
    ColumnId target = grounding_target(g);
    RefCol out = walk(ctx, sb.primary(), target);
    return RefBinding{{out}};
  }

  RefBinding realize_comparative(const ComparativeArgs& a, RefContext& ctx) {
    RefBinding sb = realize(a.subject.index, ctx);
    RefBinding ab = realize(a.attribute.index, ctx);
    if (ab.cols.size() != 1)
      throw UnsupportedShapeError("comparison against a multi-column step");
    const RefCol& attr = ab.primary();

    if (std::holds_alternative<std::monostate>(a.operand)) return sb;

    if (const StepRef* r = std::get_if<StepRef>(&a.operand)) {
      RefBinding rb = realize(r->index, ctx);
      if (rb.cols.size() != 1)
        throw UnsupportedShapeError("comparison against a multi-column step");
      Comparator cmp = a.comparator ? *a.comparator : Comparator::kEq;
      filter_against_column(ctx, attr.key, cmp, rb.primary().key);
      return sb;
    }

    const Grounding& g = std::get<Grounding>(a.operand);
    if (const ValueRef* v = std::get_if<ValueRef>(&g)) {
      auto literal = parse_as(v->datatype, v->lexical);
      if (!literal)
        throw UnsupportedShapeError("operand '" + v->lexical +
                                    "' is not a valid " +
                                    to_string(v->datatype));
      RefCol target_col = attr;
      if (v->source_column) {
        ColumnId target = resolve(*v->source_column);
        target_col = walk(ctx, attr, target);
      }
      if (a.comparator && *a.comparator == Comparator::kLike) {
        filter_against_value(ctx, target_col.key, Comparator::kLike,
                             Value::text(literal->lexical()));
      } else {
        Comparator cmp = a.comparator ? *a.comparator : Comparator::kEq;
        filter_against_value(ctx, target_col.key, cmp, *literal);
      }
      return sb;
    }

    // Entity operand: relate the attribute to the entity via a join path;
    // with a comparator, additionally compare the endpoint values.
    ColumnId target = grounding_target(g);
    RefCol end = walk(ctx, attr, target);
    if (a.comparator) {
      filter_against_column(ctx, attr.key, *a.comparator, end.key);
    }
    return sb;
  }

  RefBinding realize_superlative(const SuperlativeArgs& a, RefContext& ctx) {
    // Attribute first: a grouped attribute exports its key, so a subject
    // that is the group key binds through the grouped rows instead of
    // multiplying them back out by the raw instances.
    RefBinding ab = realize(a.attribute.index, ctx);
    RefBinding sb = realize(a.subject.index, ctx);
    if (ab.cols.size() != 1)
      throw UnsupportedShapeError("superlative over a multi-column step");

    RefContext inner;
    RefBinding ib = realize(a.attribute.index, inner);
    if (ib.cols.size() != 1)
      throw UnsupportedShapeError("superlative over a multi-column step");

    auto items = collect(inner.env, ib.primary().key, false);
    auto extreme = compute_aggregate(a.op, items);
    if (!extreme) {
      ctx.env.tuples.clear();
    } else {
      filter_against_value(ctx, ab.primary().key, Comparator::kEq, *extreme);
    }
    return sb;
  }

  RefBinding realize_aggregate(Aggregator op, int subject, RefContext& ctx) {
    RefContext child;
    RefBinding sb = realize(subject, child);
    bool distinct = step_distinct(q_.step(subject));
    auto items = collect(child.env, sb.primary().key, distinct);

    Env e;
    int key = fresh_key();
    e.cols.push_back(key);
    bool zeroable = op == Aggregator::kCount || op == Aggregator::kSum;
    if (child.env.tuples.empty()) {
      if (zeroable) {
        Instance in;
        in.value = Value::number(0);
        e.tuples.push_back({std::move(in)});
      }
    } else {
      auto value = compute_aggregate(op, items);
      if (value) {
        Instance in;
        in.value = *value;
        e.tuples.push_back({std::move(in)});
      }
    }
    merge(ctx, std::move(e));
    RefCol rc;
    rc.key = key;
    rc.aggregate = op;
    return RefBinding{{rc}};
  }

  RefBinding realize_group(Aggregator op, int values, int key,
                           RefContext& ctx) {
    RefContext child;
    RefBinding vb = realize(values, child);
    RefBinding kb = realize(key, child);
    if (vb.cols.size() != 1 || kb.cols.size() != 1)
      throw UnsupportedShapeError("grouping over a multi-column step");

    int vpos = child.env.position(vb.primary().key);
    int kpos = child.env.position(kb.primary().key);
    bool distinct = step_distinct(q_.step(values));

    std::map<std::string, std::pair<Instance, std::vector<Instance>>> groups;
    for (const auto& t : child.env.tuples) {
      const Instance& k = t[static_cast<size_t>(kpos)];
      auto& slot = groups[key_of(k)];
      if (slot.second.empty()) slot.first = exported(k);
      slot.second.push_back(t[static_cast<size_t>(vpos)]);
    }

    // The exported key joins the enclosing context: reuse its column when
    // the key step is already realized there, adopt it otherwise.
    int key_col;
    auto existing = ctx.realized.find(key);
    if (existing != ctx.realized.end()) {
      key_col = existing->second.primary().key;
    } else {
      key_col = fresh_key();
      RefCol adopted;
      adopted.key = key_col;
      adopted.column = kb.primary().column;
      adopted.aggregate = kb.primary().aggregate;
      ctx.realized[key] = RefBinding{{adopted}};
    }

    Env e;
    int agg_col = fresh_key();
    e.cols.push_back(key_col);
    e.cols.push_back(agg_col);
    for (auto& [gk, slot] : groups) {
      (void)gk;
      std::vector<const Instance*> items;
      if (distinct) {
        std::set<std::string> seen;
        for (const Instance& in : slot.second) {
          if (seen.insert(key_of(in)).second) items.push_back(&in);
        }
      } else {
        for (const Instance& in : slot.second) items.push_back(&in);
      }
      auto value = compute_aggregate(op, items);
      if (!value) continue;
      Instance agg_in;
      agg_in.value = *value;
      e.tuples.push_back({slot.first, std::move(agg_in)});
    }
    merge(ctx, std::move(e));
    RefCol rc;
    rc.key = agg_col;
    rc.aggregate = op;
    return RefBinding{{rc}};
  }

  bool is_scalar_aggregate(int index) const {
    const Step& s = q_.step(index);
    if (s.op != Op::kAggregate) return false;
    return std::holds_alternative<Aggregator>(
        std::get<AggregateArgs>(s.args).op);
  }

  RefBinding realize_union(const UnionArgs& a, RefContext& ctx) {
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

    // Aggregates of one shared subject combine into a single scalar row.
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
    // plain parts instead of joining against duplicated scans.
    std::vector<int> order;
    for (const StepRef& r : a.parts) {
      if (q_.step(r.index).op == Op::kGroup) order.push_back(r.index);
    }
    for (const StepRef& r : a.parts) {
      if (q_.step(r.index).op != Op::kGroup) order.push_back(r.index);
    }
    for (int idx : order) realize(idx, ctx);

    RefBinding out;
    for (const StepRef& r : a.parts) {
      RefBinding pb = ctx.realized.at(r.index);
      for (const RefCol& col : pb.cols) out.cols.push_back(col);
    }
    return out;
  }

  RefBinding realize_vertical_union(const UnionArgs& a, const ColumnRef& common,
                                    RefContext& ctx) {
    Env e;
    int key = fresh_key();
    e.cols.push_back(key);
    for (const StepRef& r : a.parts) {
      RefContext branch;
      RefBinding pb = realize(r.index, branch);
      if (pb.cols.size() != 1)
        throw UnsupportedShapeError("union branch with multiple columns");
      int pos = branch.env.position(pb.primary().key);
      for (const auto& t : branch.env.tuples) {
        e.tuples.push_back({exported(t[static_cast<size_t>(pos)])});
      }
    }
    merge(ctx, std::move(e));
    RefCol rc;
    rc.key = key;
    rc.column = common;
    return RefBinding{{rc}};
  }

  RefBinding realize_aggregate_row(const UnionArgs& a, int subject,
                                   RefContext& ctx) {
    RefContext child;
    RefBinding sb = realize(subject, child);
    bool distinct = step_distinct(q_.step(subject));
    auto items = collect(child.env, sb.primary().key, distinct);

    Env e;
    RefBinding out;
    std::vector<Instance> row;
    bool drop = false;
    bool empty = child.env.tuples.empty();
    for (const StepRef& r : a.parts) {
      Aggregator op =
          std::get<Aggregator>(std::get<AggregateArgs>(q_.step(r.index).args).op);
      std::optional<Value> value;
      if (empty) {
        bool zeroable = op == Aggregator::kCount || op == Aggregator::kSum;
        if (zeroable) value = Value::number(0);
      } else {
        value = compute_aggregate(op, items);
      }
      if (!value) drop = true;
      Instance in;
      if (value) in.value = *value;
      row.push_back(std::move(in));
      int key = fresh_key();
      e.cols.push_back(key);
      RefCol rc;
      rc.key = key;
      rc.aggregate = op;
      out.cols.push_back(rc);
      ctx.realized[r.index] = RefBinding{{rc}};
    }
    if (!drop) e.tuples.push_back(std::move(row));
    merge(ctx, std::move(e));
    return out;
  }

  RefBinding realize_discard(const DiscardArgs& a, RefContext& ctx) {
    RefBinding fb = realize(a.from.index, ctx);
    if (fb.cols.size() != 1)
      throw UnsupportedShapeError("DISCARD from a multi-column step");

    RefContext excluded;
    RefBinding eb = realize(a.exclude.index, excluded);
    if (eb.cols.size() != 1)
      throw UnsupportedShapeError("DISCARD of a multi-column step");

    int epos = excluded.env.position(eb.primary().key);
    std::set<std::string> remove;
    for (const auto& t : excluded.env.tuples) {
      remove.insert(key_of(exported(t[static_cast<size_t>(epos)])));
    }
    int fpos = ctx.env.position(fb.primary().key);
    std::vector<std::vector<Instance>> kept;
    for (auto& t : ctx.env.tuples) {
      if (!remove.count(key_of(exported(t[static_cast<size_t>(fpos)])))) {
        kept.push_back(std::move(t));
      }
    }
    ctx.env.tuples = std::move(kept);
    return fb;
  }

  // ---- output ----

  std::string column_name(const RefCol& col, size_t i) const {
    if (col.aggregate) return to_string(*col.aggregate);
    if (col.column) return col.column->column;
    return "col" + std::to_string(i + 1);
  }

  ResultTable emit(RefContext& ctx, const RefBinding& out, int out_index) {
    bool distinct = step_distinct(q_.step(out_index));
    bool sorted = pending_sort_ && pending_sort_->step == out_index;

    std::vector<int> positions;
    for (const RefCol& col : out.cols) {
      positions.push_back(ctx.env.position(col.key));
    }
    int sort_pos = sorted ? ctx.env.position(pending_sort_->key_col) : -1;

    struct OutRow {
      Row values;
      std::string identity;
      Value sort_key;
      std::string tie;
    };
    std::vector<OutRow> rows;
    for (const auto& t : ctx.env.tuples) {
      OutRow r;
      for (int p : positions) {
        const Instance& in = t[static_cast<size_t>(p)];
        r.values.push_back(in.value);
        r.identity += key_of(in);
        r.identity.push_back('\x1f');
      }
      if (sort_pos >= 0) r.sort_key = t[static_cast<size_t>(sort_pos)].value;
      for (const Instance& in : t) {
        r.tie += key_of(in);
        r.tie.push_back('\x1f');
      }
      rows.push_back(std::move(r));
    }

    if (sorted) {
      SortDirection dir = pending_sort_->direction;
      std::stable_sort(rows.begin(), rows.end(),
                       [&](const OutRow& x, const OutRow& y) {
                         int cmp = x.sort_key.compare_total(y.sort_key);
                         if (cmp != 0)
                           return dir == SortDirection::kAsc ? cmp < 0
                                                             : cmp > 0;
                         return x.tie < y.tie;
                       });
    }
    if (distinct) {
      std::set<std::string> seen;
      std::vector<OutRow> unique;
      for (auto& r : rows) {
        if (seen.insert(r.identity).second) unique.push_back(std::move(r));
      }
      rows = std::move(unique);
    }

    ResultTable table;
    for (size_t i = 0; i < out.cols.size(); ++i) {
      ResultColumn col;
      col.name = column_name(out.cols[i], i);
      col.source = out.cols[i].column;
      col.aggregate = out.cols[i].aggregate;
      table.columns.push_back(std::move(col));
    }
    for (auto& r : rows) table.rows.push_back(r.values);
    if (sorted) {
      SortMeta meta;
      meta.direction = pending_sort_->direction;
      for (auto& r : rows) meta.keys.push_back(r.sort_key);
      table.sort = std::move(meta);
    }
    return table;
  }
};

}  // namespace

ResultTable ref_evaluate(const GroundedQdmr& q, const Schema& schema,
                         const TableData& data) {
  data.check(schema);
  return Interpreter(q, schema, data).run();
}

}  // namespace qdmr
