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

#include "qdmr/qdmr_parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>

#include "qdmr/errors.hpp"

namespace qdmr {

namespace {

struct RawStep {
  int index = 0;
  std::string op;
  std::vector<std::string> args;
};

// Splits bracket contents on top-level commas; double quotes protect
// commas and are kept (with their escapes) for the grounding parser.
std::vector<std::string> split_args(const std::string& text, int step) {
  std::vector<std::string> out;
  std::string cur;
  bool in_quotes = false;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      cur.push_back(c);
      if (c == '\\' && i + 1 < text.size()) {
        cur.push_back(text[++i]);
      } else if (c == '"') {
        in_quotes = false;
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      cur.push_back(c);
      continue;
    }
    if (c == ',') {
      out.push_back(std::string(trim(cur)));
      cur.clear();
      continue;
    }
    cur.push_back(c);
  }
  if (in_quotes)
    throw SyntaxError("step " + std::to_string(step) +
                      ": unterminated quoted value");
  out.push_back(std::string(trim(cur)));
  if (out.size() == 1 && out[0].empty()) out.clear();
  for (const std::string& a : out) {
    if (a.empty())
      throw SyntaxError("step " + std::to_string(step) + ": empty argument");
  }
  return out;
}

RawStep parse_line(const std::string& line, int expected_index) {
  RawStep raw;
  size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw SyntaxError("line '" + line + "': " + msg);
  };
  if (i >= line.size() || line[i] != '#') fail("expected '#<step>'");
  ++i;
  size_t digits = i;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
    ++i;
  if (digits == i) fail("expected a step number after '#'");
  raw.index = std::stoi(line.substr(digits, i - digits));
  if (raw.index != expected_index)
    fail("expected step #" + std::to_string(expected_index));
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
    ++i;
  size_t op_start = i;
  while (i < line.size() && line[i] != '[') ++i;
  raw.op = std::string(trim(line.substr(op_start, i - op_start)));
  if (raw.op.empty()) fail("expected an operator name");
  if (i >= line.size()) fail("expected '[' after operator");
  ++i;  // consume '['
  size_t close = line.rfind(']');
  if (close == std::string::npos || close < i) fail("expected closing ']'");
  if (!std::string(trim(line.substr(close + 1))).empty())
    fail("unexpected text after ']'");
  raw.args = split_args(line.substr(i, close - i), raw.index);
  return raw;
}

std::optional<Op> op_from_string(const std::string& name) {
  std::string u = to_lower(name);
  if (u == "select") return Op::kSelect;
  if (u == "project") return Op::kProject;
  if (u == "filter" || u == "comparative") return Op::kComparative;
  if (u == "superlative") return Op::kSuperlative;
  if (u == "aggregate") return Op::kAggregate;
  if (u == "group") return Op::kGroup;
  if (u == "union") return Op::kUnion;
  if (u == "intersect" || u == "intersection") return Op::kIntersect;
  if (u == "discard") return Op::kDiscard;
  if (u == "sort") return Op::kSort;
  return std::nullopt;
}

std::optional<Aggregator> aggregator_from_string(const std::string& word) {
  std::string u = to_lower(word);
  if (u == "count") return Aggregator::kCount;
  if (u == "sum") return Aggregator::kSum;
  if (u == "avg") return Aggregator::kAvg;
  if (u == "min") return Aggregator::kMin;
  if (u == "max") return Aggregator::kMax;
  return std::nullopt;
}

class StepParser {
 public:
  StepParser(const Schema& schema, int step) : schema_(schema), step_(step) {}

  [[noreturn]] void bad_arity(const std::string& msg) const {
    throw BadArityError("step " + std::to_string(step_) + ": " + msg);
  }

  StepRef parse_ref(const std::string& arg) const {
    if (arg.size() < 2 || arg[0] != '#')
      bad_arity("expected a step reference, got '" + arg + "'");
    for (size_t i = 1; i < arg.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(arg[i])))
        bad_arity("expected a step reference, got '" + arg + "'");
    }
    int idx = std::stoi(arg.substr(1));
    if (idx < 1 || idx >= step_)
      throw ForwardRefError("step " + std::to_string(step_) +
                            ": reference " + arg +
                            " does not point to an earlier step");
    return StepRef{idx};
  }

  // Unquotes a double-quoted token; returns nullopt when not quoted.
  std::optional<std::string> unquote(const std::string& arg) const {
    if (arg.size() < 2 || arg.front() != '"' || arg.back() != '"')
      return std::nullopt;
    std::string out;
    for (size_t i = 1; i + 1 < arg.size(); ++i) {
      if (arg[i] == '\\' && i + 2 < arg.size()) {
        out.push_back(arg[++i]);
      } else {
        out.push_back(arg[i]);
      }
    }
    return out;
  }

  ColumnRef resolve_column(const std::string& table,
                           const std::string& column) const {
    auto ti = schema_.table_index(table);
    if (!ti)
      throw UnknownEntityError("step " + std::to_string(step_) +
                               ": unknown table '" + table + "'");
    const Table& t = schema_.tables()[*ti];
    auto ci = t.column_index(column);
    if (!ci)
      throw UnknownEntityError("step " + std::to_string(step_) +
                               ": unknown column '" + table + "." + column +
                               "'");
    return ColumnRef{t.name, t.columns[*ci].name};
  }

  ValueRef make_value(const std::string& lexical, bool quoted,
                      std::optional<ColumnRef> source) const {
    ValueRef v;
    v.source_column = std::move(source);
    if (!quoted) {
      if (auto num = parse_number(lexical)) {
        v.lexical = format_number(*num);
        v.datatype = Datatype::kNumber;
      } else if (auto iso = normalize_date(lexical)) {
        v.lexical = *iso;
        v.datatype = Datatype::kDate;
      }
    }
    if (v.lexical.empty() && v.datatype == Datatype::kText) {
      v.lexical = lexical;
      v.datatype = Datatype::kText;
    }
    if (v.source_column) {
      const Column* col =
          schema_.find_column(v.source_column->table, v.source_column->column);
      // Prefer the source column's type when the lexical form casts to it.
      if (col && col->type != v.datatype) {
        if (auto cast = parse_as(col->type, lexical)) {
          v.lexical = cast->lexical();
          v.datatype = col->type;
        }
      }
    }
    return v;
  }

  // `entity` slots (SELECT subject, PROJECT projection, aggregator slots)
  // require a table or column; elsewhere unresolved tokens become values.
  Grounding parse_grounding(const std::string& arg, bool entity_slot) const {
    if (!arg.empty() && arg[0] == '#')
      bad_arity("expected a grounding, got step reference '" + arg + "'");
    if (auto text = unquote(arg)) {
      return make_value(*text, true, std::nullopt);
    }
    // Quoted value with a source column: "text"@Table.Column.
    if (!arg.empty() && arg[0] == '"') {
      size_t at = arg.rfind('@');
      if (at != std::string::npos) {
        auto text = unquote(std::string(trim(arg.substr(0, at))));
        if (text) {
          auto col = split_column(std::string(trim(arg.substr(at + 1))));
          if (col) return make_value(*text, true, *col);
        }
      }
      throw SyntaxError("step " + std::to_string(step_) +
                        ": malformed quoted value '" + arg + "'");
    }
    if (auto ti = schema_.table_index(arg)) {
      return TableRef{schema_.tables()[*ti].name};
    }
    if (auto col = try_column(arg)) {
      return *col;
    }
    size_t at = arg.rfind('@');
    if (at != std::string::npos) {
      auto col = split_column(std::string(trim(arg.substr(at + 1))));
      if (col)
        return make_value(std::string(trim(arg.substr(0, at))), false, *col);
    }
    if (entity_slot)
      throw UnknownEntityError("step " + std::to_string(step_) + ": '" + arg +
                               "' does not name a table or column");
    return make_value(arg, false, std::nullopt);
  }

  std::optional<ColumnRef> split_column(const std::string& arg) const {
    size_t dot = arg.find('.');
    if (dot == std::string::npos) return std::nullopt;
    std::string table = std::string(trim(arg.substr(0, dot)));
    std::string column = std::string(trim(arg.substr(dot + 1)));
    if (table.empty() || column.empty()) return std::nullopt;
    return resolve_column(table, column);
  }

  std::optional<ColumnRef> try_column(const std::string& arg) const {
    size_t dot = arg.find('.');
    if (dot == std::string::npos) return std::nullopt;
    std::string table = std::string(trim(arg.substr(0, dot)));
    std::string column = std::string(trim(arg.substr(dot + 1)));
    if (!schema_.table_index(table)) return std::nullopt;
    const Table* t = schema_.find_table(table);
    if (!t->column_index(column))
      throw UnknownEntityError("step " + std::to_string(step_) +
                               ": unknown column '" + arg + "'");
    return resolve_column(table, column);
  }

  AggregatorSlot parse_aggregator_slot(const std::string& arg) const {
    if (auto agg = aggregator_from_string(arg)) return *agg;
    return parse_grounding(arg, true);
  }

  // Comparator prefix of the third COMPARATIVE argument; UTF-8 glyphs
  // first so their ASCII prefixes do not shadow them.
  std::pair<std::optional<Comparator>, std::string> split_comparator(
      const std::string& arg) const {
    static const std::pair<const char*, Comparator> kPrefixes[] = {
        {"≥", Comparator::kGe}, {"≤", Comparator::kLe},
        {"≠", Comparator::kNe}, {">=", Comparator::kGe},
        {"<=", Comparator::kLe},     {"!=", Comparator::kNe},
        {">", Comparator::kGt},      {"<", Comparator::kLt},
        {"=", Comparator::kEq},
    };
    for (const auto& [prefix, comp] : kPrefixes) {
      std::string_view p(prefix);
      if (arg.size() > p.size() && arg.compare(0, p.size(), p) == 0) {
        return {comp, std::string(trim(arg.substr(p.size())))};
      }
    }
    std::string lowered = to_lower(arg);
    if (lowered.rfind("like ", 0) == 0) {
      return {Comparator::kLike, std::string(trim(arg.substr(5)))};
    }
    return {std::nullopt, arg};
  }

  ComparativeArgs parse_comparative(const std::vector<std::string>& args) const {
    if (args.size() < 2 || args.size() > 3)
      bad_arity("COMPARATIVE takes 2 or 3 arguments");
    ComparativeArgs out;
    out.subject = parse_ref(args[0]);
    out.attribute = parse_ref(args[1]);
    if (args.size() == 2) return out;
    auto [comp, rest] = split_comparator(args[2]);
    out.comparator = comp;
    if (rest.empty()) bad_arity("comparator without an operand");
    if (rest[0] == '#') {
      out.operand = parse_ref(rest);
    } else {
      out.operand = parse_grounding(rest, false);
    }
    return out;
  }

 private:
  const Schema& schema_;
  int step_;
};

}  // namespace

GroundedQdmr parse_qdmr(const std::string& text, const Schema& schema) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      std::string trimmed = std::string(trim(line));
      if (!trimmed.empty()) lines.push_back(std::move(trimmed));
    }
  }
  if (lines.empty()) throw SyntaxError("empty decomposition");

  GroundedQdmr q;
  for (size_t li = 0; li < lines.size(); ++li) {
    RawStep raw = parse_line(lines[li], static_cast<int>(li) + 1);
    auto op = op_from_string(raw.op);
    if (!op)
      throw SyntaxError("step " + std::to_string(raw.index) +
                        ": unknown operator '" + raw.op + "'");

    StepParser p(schema, raw.index);
    Step step;
    step.index = raw.index;
    step.op = *op;

    // Trailing "distinct" flag.
    bool distinct = false;
    std::vector<std::string> args = raw.args;
    if (!args.empty() && to_lower(args.back()) == "distinct") {
      if (*op != Op::kSelect && *op != Op::kProject && *op != Op::kComparative)
        p.bad_arity("distinct is not applicable to " + to_string(*op));
      distinct = true;
      args.pop_back();
    }

    switch (*op) {
      case Op::kSelect: {
        if (args.size() != 1) p.bad_arity("SELECT takes 1 argument");
        SelectArgs a;
        a.subject = p.parse_grounding(args[0], true);
        a.distinct = distinct;
        step.args = std::move(a);
        break;
      }
      case Op::kProject: {
        if (args.size() != 2) p.bad_arity("PROJECT takes 2 arguments");
        ProjectArgs a;
        a.projection = p.parse_grounding(args[0], true);
        a.subject = p.parse_ref(args[1]);
        a.distinct = distinct;
        step.args = std::move(a);
        break;
      }
      case Op::kComparative: {
        ComparativeArgs a = p.parse_comparative(args);
        a.distinct = distinct;
        step.args = std::move(a);
        break;
      }
      case Op::kSuperlative: {
        if (args.size() != 3) p.bad_arity("SUPERLATIVE takes 3 arguments");
        SuperlativeArgs a;
        auto agg = aggregator_from_string(args[0]);
        if (!agg || (*agg != Aggregator::kMin && *agg != Aggregator::kMax))
          p.bad_arity("SUPERLATIVE needs min or max, got '" + args[0] + "'");
        a.op = *agg;
        a.subject = p.parse_ref(args[1]);
        a.attribute = p.parse_ref(args[2]);
        step.args = std::move(a);
        break;
      }
      case Op::kAggregate: {
        if (args.size() != 2) p.bad_arity("AGGREGATE takes 2 arguments");
        AggregateArgs a;
        a.op = p.parse_aggregator_slot(args[0]);
        a.subject = p.parse_ref(args[1]);
        step.args = std::move(a);
        break;
      }
      case Op::kGroup: {
        if (args.size() != 3) p.bad_arity("GROUP takes 3 arguments");
        GroupArgs a;
        a.op = p.parse_aggregator_slot(args[0]);
        a.values = p.parse_ref(args[1]);
        a.key = p.parse_ref(args[2]);
        step.args = std::move(a);
        break;
      }
      case Op::kUnion: {
        if (args.size() < 2) p.bad_arity("UNION takes at least 2 arguments");
        UnionArgs a;
        for (const std::string& arg : args) a.parts.push_back(p.parse_ref(arg));
        step.args = std::move(a);
        break;
      }
      case Op::kIntersect: {
        if (args.size() != 3) p.bad_arity("INTERSECT takes 3 arguments");
        IntersectArgs a;
        a.projection = p.parse_ref(args[0]);
        a.left = p.parse_ref(args[1]);
        a.right = p.parse_ref(args[2]);
        step.args = std::move(a);
        break;
      }
      case Op::kDiscard: {
        if (args.size() != 2) p.bad_arity("DISCARD takes 2 arguments");
        DiscardArgs a;
        a.from = p.parse_ref(args[0]);
        a.exclude = p.parse_ref(args[1]);
        step.args = std::move(a);
        break;
      }
      case Op::kSort: {
        if (args.size() != 3) p.bad_arity("SORT takes 3 arguments");
        SortArgs a;
        a.subject = p.parse_ref(args[0]);
        a.key = p.parse_ref(args[1]);
        std::string dir = to_lower(args[2]);
        if (dir == "asc" || dir == "ascending") {
          a.direction = SortDirection::kAsc;
        } else if (dir == "desc" || dir == "descending") {
          a.direction = SortDirection::kDesc;
        } else {
          p.bad_arity("SORT direction must be asc or desc, got '" + args[2] +
                      "'");
        }
        step.args = std::move(a);
        break;
      }
    }
    q.steps.push_back(std::move(step));
  }

  // Every step must feed into the output step.
  std::vector<bool> reachable(q.steps.size() + 1, false);
  std::vector<int> stack = {static_cast<int>(q.steps.size())};
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    if (reachable[i]) continue;
    reachable[i] = true;
    for (int r : step_refs(q.step(i))) stack.push_back(r);
  }
  for (const Step& s : q.steps) {
    if (!reachable[s.index])
      throw SyntaxError("step " + std::to_string(s.index) +
                        " does not contribute to the final step");
  }
  return q;
}

}  // namespace qdmr
