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

#include "qdmr/sparql_eval.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "qdmr/errors.hpp"

namespace qdmr {

namespace {

struct Solutions {
  std::vector<Var> vars;
  std::vector<std::vector<Term>> rows;

  std::optional<size_t> var_index(const Var& v) const {
    for (size_t i = 0; i < vars.size(); ++i) {
      if (vars[i] == v) return i;
    }
    return std::nullopt;
  }

  static Solutions unit() {
    Solutions s;
    s.rows.emplace_back();
    return s;
  }
};

std::string row_key(const std::vector<Term>& row,
                    const std::vector<size_t>& cols) {
  std::string key;
  for (size_t c : cols) {
    key += term_to_string(row[c]);
    key.push_back('\x1f');
  }
  return key;
}

std::string full_row_string(const std::vector<Term>& row) {
  std::string key;
  for (const Term& t : row) {
    key += term_to_string(t);
    key.push_back('\x1f');
  }
  return key;
}

// Natural join on shared variable names; rows of `a` drive the output
// order, matching `b` rows follow their own order.
Solutions join(const Solutions& a, const Solutions& b) {
  std::vector<size_t> shared_a;
  std::vector<size_t> shared_b;
  std::vector<size_t> extra_b;
  for (size_t i = 0; i < b.vars.size(); ++i) {
    if (auto ai = a.var_index(b.vars[i])) {
      shared_a.push_back(*ai);
      shared_b.push_back(i);
    } else {
      extra_b.push_back(i);
    }
  }

  Solutions out;
  out.vars = a.vars;
  for (size_t i : extra_b) out.vars.push_back(b.vars[i]);

  std::unordered_map<std::string, std::vector<size_t>> index;
  for (size_t r = 0; r < b.rows.size(); ++r) {
    index[row_key(b.rows[r], shared_b)].push_back(r);
  }
  for (const auto& ra : a.rows) {
    auto it = index.find(row_key(ra, shared_a));
    if (it == index.end()) continue;
    for (size_t rb : it->second) {
      std::vector<Term> row = ra;
      for (size_t i : extra_b) row.push_back(b.rows[rb][i]);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

bool numeric_or_null(const Term& t) {
  return term_value(t).is_number();
}

class Evaluator {
 public:
  explicit Evaluator(const RdfGraph& graph) : graph_(graph) {}

  // Evaluates a query; when `order_keys` is non-null and the query has an
  // ORDER BY, it receives one key value per returned row.
  Solutions select(const SelectQuery& q, std::vector<Value>* order_keys) {
    Solutions body = pattern(q.where);

    bool has_aggregates = false;
    for (const ProjectionItem& item : q.projection) {
      if (std::holds_alternative<AggExpr>(item.expr)) has_aggregates = true;
    }

    if (has_aggregates || !q.group_by.empty()) {
      body = aggregate(q, body);
    }

    // Sort before projection so the key may be a non-projected variable;
    // projection preserves row order.
    std::vector<Term> keys;
    if (q.order_by) {
      auto ki = body.var_index(q.order_by->var);
      if (!ki)
        throw MisuseError("order key ?" + q.order_by->var.name + " not bound");
      order_rows(body, *ki, q.order_by->direction);
      for (const auto& row : body.rows) keys.push_back(row[*ki]);
    }

    Solutions out;
    std::vector<size_t> cols;
    for (const ProjectionItem& item : q.projection) {
      const Var& v = item.output_var();
      auto i = body.var_index(v);
      if (!i) throw MisuseError("projected variable ?" + v.name + " not bound");
      cols.push_back(*i);
      out.vars.push_back(v);
    }
    for (size_t r = 0; r < body.rows.size(); ++r) {
      std::vector<Term> row;
      row.reserve(cols.size());
      for (size_t c : cols) row.push_back(body.rows[r][c]);
      out.rows.push_back(std::move(row));
    }

    if (q.distinct) {
      std::set<std::string> seen;
      std::vector<std::vector<Term>> rows;
      std::vector<Term> kept_keys;
      for (size_t r = 0; r < out.rows.size(); ++r) {
        if (!seen.insert(full_row_string(out.rows[r])).second) continue;
        if (!keys.empty()) kept_keys.push_back(keys[r]);
        rows.push_back(std::move(out.rows[r]));
      }
      out.rows = std::move(rows);
      keys = std::move(kept_keys);
    }

    if (order_keys != nullptr && q.order_by) {
      order_keys->clear();
      for (const Term& k : keys) order_keys->push_back(term_value(k));
    }
    return out;
  }

 private:
  Solutions pattern(const GroupGraphPattern& p) {
    std::vector<const TriplePattern*> triples;
    std::vector<const FilterExpr*> filters;
    std::vector<const UnionExpr*> unions;
    std::vector<const MinusExpr*> minuses;
    std::vector<const SubSelect*> subs;
    for (const GraphElement& e : p.elements) {
      std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, TriplePattern>) {
              triples.push_back(&node);
            } else if constexpr (std::is_same_v<T, FilterExpr>) {
              filters.push_back(&node);
            } else if constexpr (std::is_same_v<T, UnionExpr>) {
              unions.push_back(&node);
            } else if constexpr (std::is_same_v<T, MinusExpr>) {
              minuses.push_back(&node);
            } else if constexpr (std::is_same_v<T, SubSelect>) {
              subs.push_back(&node);
            }
          },
          e.node);
    }

    Solutions sols = Solutions::unit();

    // Triple patterns, most-bound first so index probes stay selective;
    // ties follow declaration order.
    std::vector<bool> done(triples.size(), false);
    for (size_t round = 0; round < triples.size(); ++round) {
      size_t best = triples.size();
      int best_bound = -1;
      for (size_t i = 0; i < triples.size(); ++i) {
        if (done[i]) continue;
        int bound = 0;
        if (sols.var_index(triples[i]->subject)) ++bound;
        if (const Var* v = std::get_if<Var>(&triples[i]->object)) {
          if (sols.var_index(*v)) ++bound;
        } else {
          ++bound;
        }
        if (bound > best_bound) {
          best_bound = bound;
          best = i;
        }
      }
      done[best] = true;
      sols = extend_with_triple(sols, *triples[best]);
    }

    for (const SubSelect* s : subs) {
      sols = join(sols, select(*s->query, nullptr));
    }

    for (const UnionExpr* u : unions) {
      Solutions merged;
      bool first = true;
      for (const GroupGraphPattern& branch : u->branches) {
        Solutions bs = pattern(branch);
        if (first) {
          merged = std::move(bs);
          first = false;
          continue;
        }
        if (!(bs.vars == merged.vars))
          throw UnsupportedFeatureError(
              "union branches must bind the same variables");
        for (auto& row : bs.rows) merged.rows.push_back(std::move(row));
      }
      sols = join(sols, merged);
    }

    for (const FilterExpr* f : filters) {
      apply_filter(sols, *f);
    }

    for (const MinusExpr* m : minuses) {
      apply_minus(sols, pattern(m->pattern.front()));
    }
    return sols;
  }

  Solutions extend_with_triple(const Solutions& sols, const TriplePattern& t) {
    auto si = sols.var_index(t.subject);
    const Var* ov = std::get_if<Var>(&t.object);
    std::optional<size_t> oi = ov ? sols.var_index(*ov) : std::nullopt;
    bool same_var = ov != nullptr && *ov == t.subject;

    Solutions out;
    out.vars = sols.vars;
    bool add_subject = !si.has_value();
    if (add_subject) out.vars.push_back(t.subject);
    bool add_object = ov != nullptr && !oi.has_value() && !same_var;
    if (add_object) out.vars.push_back(*ov);

    for (const auto& row : sols.rows) {
      std::optional<Term> s;
      if (si) s = row[*si];
      std::optional<Term> o;
      if (ov == nullptr) {
        o = Term(std::get<Value>(t.object));
      } else if (oi) {
        o = row[*oi];
      }
      for (const Triple* m : graph_.match(s, t.predicate, o)) {
        if (same_var && !term_equals(m->subject, m->object)) continue;
        std::vector<Term> next = row;
        if (add_subject) next.push_back(m->subject);
        if (add_object) next.push_back(m->object);
        out.rows.push_back(std::move(next));
      }
    }
    return out;
  }

  void apply_filter(Solutions& sols, const FilterExpr& f) {
    auto li = sols.var_index(f.lhs);
    if (!li) throw MisuseError("filter variable ?" + f.lhs.name + " not bound");
    std::optional<size_t> ri;
    std::optional<Value> literal;
    if (const Var* v = std::get_if<Var>(&f.rhs)) {
      ri = sols.var_index(*v);
      if (!ri) throw MisuseError("filter variable ?" + v->name + " not bound");
    } else {
      literal = std::get<Value>(f.rhs);
    }

    std::vector<std::vector<Term>> kept;
    for (auto& row : sols.rows) {
      Value lhs = term_value(row[*li]);
      Value rhs = literal ? *literal : term_value(row[*ri]);
      bool pass = false;
      if (f.op == FilterOp::kContains) {
        pass = lhs.contains(rhs);
      } else {
        auto cmp = lhs.compare_query(rhs);
        if (cmp) {
          switch (f.op) {
            case FilterOp::kEq:
              pass = *cmp == 0;
              break;
            case FilterOp::kNe:
              pass = *cmp != 0;
              break;
            case FilterOp::kLt:
              pass = *cmp < 0;
              break;
            case FilterOp::kLe:
              pass = *cmp <= 0;
              break;
            case FilterOp::kGt:
              pass = *cmp > 0;
              break;
            case FilterOp::kGe:
              pass = *cmp >= 0;
              break;
            case FilterOp::kContains:
              break;
          }
        }
        // Cross-kind comparisons (including !=) stay false.
      }
      if (pass) kept.push_back(std::move(row));
    }
    sols.rows = std::move(kept);
  }

  void apply_minus(Solutions& sols, const Solutions& right) {
    std::vector<size_t> shared_l;
    std::vector<size_t> shared_r;
    for (size_t i = 0; i < right.vars.size(); ++i) {
      if (auto li = sols.var_index(right.vars[i])) {
        shared_l.push_back(*li);
        shared_r.push_back(i);
      }
    }
    if (shared_l.empty()) return;
    std::set<std::string> keys;
    for (const auto& row : right.rows) {
      keys.insert(row_key(row, shared_r));
    }
    std::vector<std::vector<Term>> kept;
    for (auto& row : sols.rows) {
      if (!keys.count(row_key(row, shared_l))) kept.push_back(std::move(row));
    }
    sols.rows = std::move(kept);
  }

  Solutions aggregate(const SelectQuery& q, const Solutions& body) {
    std::vector<size_t> key_cols;
    for (const Var& v : q.group_by) {
      auto i = body.var_index(v);
      if (!i) throw MisuseError("group key ?" + v.name + " not bound");
      key_cols.push_back(*i);
    }

    // Deterministic group order: sorted by serialized key tuple.
    std::map<std::string, std::vector<size_t>> groups;
    for (size_t r = 0; r < body.rows.size(); ++r) {
      groups[row_key(body.rows[r], key_cols)].push_back(r);
    }

    Solutions out;
    for (const ProjectionItem& item : q.projection) {
      out.vars.push_back(item.output_var());
    }

    bool ungrouped = q.group_by.empty();
    if (ungrouped && body.rows.empty()) {
      // One all-zero row when every aggregate tolerates emptiness.
      bool all_zeroable = true;
      for (const ProjectionItem& item : q.projection) {
        const AggExpr& agg = std::get<AggExpr>(item.expr);
        if (agg.func != Aggregator::kCount && agg.func != Aggregator::kSum)
          all_zeroable = false;
      }
      if (all_zeroable) {
        std::vector<Term> row(q.projection.size(), Term(Value::number(0)));
        out.rows.push_back(std::move(row));
      }
      return out;
    }

    for (const auto& [key, members] : groups) {
      (void)key;
      std::vector<Term> row;
      bool drop_group = false;
      for (const ProjectionItem& item : q.projection) {
        if (const Var* v = std::get_if<Var>(&item.expr)) {
          auto i = body.var_index(*v);
          bool grouped = false;
          for (size_t kc : key_cols) {
            if (*i == kc) grouped = true;
          }
          if (!grouped)
            throw MisuseError("projected variable ?" + v->name +
                              " is neither grouped nor aggregated");
          row.push_back(body.rows[members.front()][*i]);
          continue;
        }
        const AggExpr& agg = std::get<AggExpr>(item.expr);
        auto ai = body.var_index(agg.arg);
        if (!ai)
          throw MisuseError("aggregated variable ?" + agg.arg.name +
                            " not bound");
        std::vector<const Term*> terms;
        if (agg.distinct) {
          std::set<std::string> seen;
          for (size_t r : members) {
            const Term& t = body.rows[r][*ai];
            if (seen.insert(term_to_string(t)).second) terms.push_back(&t);
          }
        } else {
          for (size_t r : members) terms.push_back(&body.rows[r][*ai]);
        }
        auto value = compute_aggregate(agg.func, terms);
        if (!value) {
          drop_group = true;
          break;
        }
        row.push_back(*value);
      }
      if (!drop_group) out.rows.push_back(std::move(row));
    }
    return out;
  }

  std::optional<Term> compute_aggregate(Aggregator func,
                                        const std::vector<const Term*>& terms) {
    switch (func) {
      case Aggregator::kCount:
        return Term(Value::number(static_cast<double>(terms.size())));
      case Aggregator::kSum:
      case Aggregator::kAvg: {
        double sum = 0;
        size_t n = 0;
        for (const Term* t : terms) {
          Value v = term_value(*t);
          if (v.is_number()) {
            sum += v.as_number();
            ++n;
          }
        }
        if (func == Aggregator::kSum) return Term(Value::number(sum));
        if (n == 0) return std::nullopt;
        return Term(Value::number(sum / static_cast<double>(n)));
      }
      case Aggregator::kMin:
      case Aggregator::kMax: {
        if (terms.empty()) return std::nullopt;
        const Term* best = terms.front();
        for (const Term* t : terms) {
          int cmp = term_value(*t).compare_total(term_value(*best));
          if (func == Aggregator::kMin ? cmp < 0 : cmp > 0) best = t;
        }
        return Term(term_value(*best));
      }
    }
    return std::nullopt;
  }

  void order_rows(Solutions& sols, size_t key_col, SortDirection dir) {
    std::stable_sort(sols.rows.begin(), sols.rows.end(),
                     [&](const std::vector<Term>& a, const std::vector<Term>& b) {
                       int cmp = term_value(a[key_col])
                                     .compare_total(term_value(b[key_col]));
                       if (cmp != 0)
                         return dir == SortDirection::kAsc ? cmp < 0 : cmp > 0;
                       return full_row_string(a) < full_row_string(b);
                     });
  }

  const RdfGraph& graph_;
};

ResultTable to_result(const SelectQuery& ast, Solutions sols,
                      std::vector<Value> order_keys,
                      const std::vector<QueryOutput>* outputs) {
  ResultTable table;
  for (size_t i = 0; i < sols.vars.size(); ++i) {
    ResultColumn col;
    col.name = sols.vars[i].name;
    if (outputs != nullptr && i < outputs->size()) {
      col.name = (*outputs)[i].name;
      col.source = (*outputs)[i].source;
      col.aggregate = (*outputs)[i].aggregate;
    }
    table.columns.push_back(std::move(col));
  }
  for (const auto& row : sols.rows) {
    std::vector<Value> cells;
    cells.reserve(row.size());
    for (const Term& t : row) cells.push_back(term_value(t));
    table.rows.push_back(std::move(cells));
  }
  if (ast.order_by) {
    table.sort = SortMeta{ast.order_by->direction, std::move(order_keys)};
  }
  return table;
}

}  // namespace

ResultTable evaluate(const SparqlQuery& query, const RdfGraph& graph) {
  Evaluator ev(graph);
  std::vector<Value> keys;
  Solutions sols = ev.select(query.ast, &keys);
  return to_result(query.ast, std::move(sols), std::move(keys), &query.outputs);
}

ResultTable evaluate(const SelectQuery& ast, const RdfGraph& graph) {
  Evaluator ev(graph);
  std::vector<Value> keys;
  Solutions sols = ev.select(ast, &keys);
  return to_result(ast, std::move(sols), std::move(keys), nullptr);
}

}  // namespace qdmr
