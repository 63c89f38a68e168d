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

#include "qdmr/sparql_parser.hpp"

#include <cctype>
#include <memory>

#include "qdmr/errors.hpp"

namespace qdmr {

namespace {

enum class TokKind {
  kKeyword,   // uppercased bare word
  kVar,       // ?name
  kArc,       // arc:...
  kString,    // quoted literal (unescaped)
  kNumber,
  kPunct,     // { } ( ) . , and comparison operators
  kEnd,
};

struct Token {
  TokKind kind = TokKind::kEnd;
  std::string text;
  double number = 0;
};

const char* kUnsupported[] = {
    "OPTIONAL", "PREFIX",  "BASE",   "ASK",    "CONSTRUCT", "DESCRIBE",
    "LIMIT",    "OFFSET",  "HAVING", "BIND",   "VALUES",    "EXISTS",
    "SERVICE",  "GRAPH",   "NAMED",  "REDUCED", "SAMPLE",   "GROUP_CONCAT",
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError("query parse error: " + msg + " near '" + cur_.text +
                      "'");
  }

 private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ >= text_.size()) {
      cur_ = {TokKind::kEnd, "<end>", 0};
      return;
    }
    char c = text_[pos_];
    if (c == '?') {
      size_t start = ++pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(
                                         text_[pos_])) ||
                                     text_[pos_] == '_'))
        ++pos_;
      if (pos_ == start) throw SyntaxError("empty variable name");
      cur_ = {TokKind::kVar, text_.substr(start, pos_ - start), 0};
      return;
    }
    if (c == '"') {
      std::string out;
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        char d = text_[pos_];
        if (d == '\\' && pos_ + 1 < text_.size()) {
          char e = text_[++pos_];
          switch (e) {
            case 'n':
              out.push_back('\n');
              break;
            case 'r':
              out.push_back('\r');
              break;
            case 't':
              out.push_back('\t');
              break;
            default:
              out.push_back(e);
          }
        } else {
          out.push_back(d);
        }
        ++pos_;
      }
      if (pos_ >= text_.size()) throw SyntaxError("unterminated string literal");
      ++pos_;
      cur_ = {TokKind::kString, out, 0};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      size_t start = pos_;
      if (c == '-' || c == '+') ++pos_;
      bool any = false;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E' ||
              ((text_[pos_] == '-' || text_[pos_] == '+') &&
               (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
        ++pos_;
        any = true;
      }
      std::string lex = text_.substr(start, pos_ - start);
      auto num = parse_number(lex);
      if (!any || !num) throw SyntaxError("bad numeric literal: " + lex);
      cur_ = {TokKind::kNumber, lex, *num};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(
                                         text_[pos_])) ||
                                     text_[pos_] == '_' || text_[pos_] == ':'))
        ++pos_;
      std::string word = text_.substr(start, pos_ - start);
      if (word.rfind("arc:", 0) == 0) {
        cur_ = {TokKind::kArc, word, 0};
        return;
      }
      if (word.find(':') != std::string::npos)
        throw UnsupportedFeatureError("prefixed names are not supported: " +
                                      word);
      std::string upper;
      for (char ch : word)
        upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
      for (const char* bad : kUnsupported) {
        if (upper == bad)
          throw UnsupportedFeatureError("unsupported keyword: " + word);
      }
      cur_ = {TokKind::kKeyword, upper, 0};
      return;
    }
    if (c == '<')  {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        cur_ = {TokKind::kPunct, "<=", 0};
        pos_ += 2;
        return;
      }
      // Bare '<' is ambiguous between a comparison and an IRI; IRIs
      // contain no spaces before '>'.
      size_t close = text_.find('>', pos_ + 1);
      size_t space = text_.find_first_of(" \t\r\n", pos_ + 1);
      if (close != std::string::npos && (space == std::string::npos ||
                                         close < space)) {
        throw UnsupportedFeatureError("IRIs are not supported");
      }
      cur_ = {TokKind::kPunct, "<", 0};
      ++pos_;
      return;
    }
    if (c == '>' || c == '=' || c == '!') {
      if ((c == '>' || c == '!') && pos_ + 1 < text_.size() &&
          text_[pos_ + 1] == '=') {
        cur_ = {TokKind::kPunct, std::string(1, c) + "=", 0};
        pos_ += 2;
        return;
      }
      if (c == '!') throw SyntaxError("unexpected '!'");
      cur_ = {TokKind::kPunct, std::string(1, c), 0};
      ++pos_;
      return;
    }
    if (std::string("{}().,;*/|^[]").find(c) != std::string::npos) {
      if (c == ';' || c == '*' || c == '/' || c == '|' || c == '^' ||
          c == '[' || c == ']')
        throw UnsupportedFeatureError(std::string("unsupported syntax: '") +
                                      c + "'");
      cur_ = {TokKind::kPunct, std::string(1, c), 0};
      ++pos_;
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  size_t pos_ = 0;
  Token cur_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  SelectQuery parse() {
    SelectQuery q = parse_select();
    if (lex_.peek().kind != TokKind::kEnd)
      lex_.fail("unexpected trailing tokens");
    return q;
  }

 private:
  bool at_keyword(const char* kw) const {
    return lex_.peek().kind == TokKind::kKeyword && lex_.peek().text == kw;
  }

  void expect_keyword(const char* kw) {
    if (!at_keyword(kw)) lex_.fail(std::string("expected ") + kw);
    lex_.take();
  }

  bool at_punct(const char* p) const {
    return lex_.peek().kind == TokKind::kPunct && lex_.peek().text == p;
  }

  void expect_punct(const char* p) {
    if (!at_punct(p)) lex_.fail(std::string("expected '") + p + "'");
    lex_.take();
  }

  Var expect_var() {
    if (lex_.peek().kind != TokKind::kVar) lex_.fail("expected a variable");
    return Var{lex_.take().text};
  }

  std::optional<Aggregator> aggregator_keyword(const std::string& kw) const {
    if (kw == "COUNT") return Aggregator::kCount;
    if (kw == "SUM") return Aggregator::kSum;
    if (kw == "AVG") return Aggregator::kAvg;
    if (kw == "MIN") return Aggregator::kMin;
    if (kw == "MAX") return Aggregator::kMax;
    return std::nullopt;
  }

  SelectQuery parse_select() {
    expect_keyword("SELECT");
    SelectQuery q;
    if (at_keyword("DISTINCT")) {
      lex_.take();
      q.distinct = true;
    }
    while (true) {
      if (lex_.peek().kind == TokKind::kVar) {
        q.projection.push_back({expect_var(), std::nullopt});
        continue;
      }
      if (at_punct("(")) {
        lex_.take();
        if (lex_.peek().kind != TokKind::kKeyword) lex_.fail("expected an aggregate");
        auto agg = aggregator_keyword(lex_.peek().text);
        if (!agg) lex_.fail("expected an aggregate function");
        lex_.take();
        expect_punct("(");
        AggExpr expr;
        expr.func = *agg;
        if (at_keyword("DISTINCT")) {
          lex_.take();
          expr.distinct = true;
        }
        expr.arg = expect_var();
        expect_punct(")");
        expect_keyword("AS");
        Var alias = expect_var();
        expect_punct(")");
        q.projection.push_back({expr, alias});
        continue;
      }
      break;
    }
    if (q.projection.empty()) lex_.fail("projection is empty");
    expect_keyword("WHERE");
    q.where = parse_group();
    if (at_keyword("GROUP")) {
      lex_.take();
      expect_keyword("BY");
      while (lex_.peek().kind == TokKind::kVar) {
        q.group_by.push_back(expect_var());
      }
      if (q.group_by.empty()) lex_.fail("GROUP BY without variables");
    }
    if (at_keyword("ORDER")) {
      lex_.take();
      expect_keyword("BY");
      SortDirection dir = SortDirection::kAsc;
      if (at_keyword("ASC") || at_keyword("DESC")) {
        dir = lex_.take().text == "ASC" ? SortDirection::kAsc
                                        : SortDirection::kDesc;
      }
      expect_punct("(");
      Var v = expect_var();
      expect_punct(")");
      q.order_by = OrderKey{v, dir};
    }
    return q;
  }

  GroupGraphPattern parse_group() {
    expect_punct("{");
    GroupGraphPattern out;
    while (!at_punct("}")) {
      if (lex_.peek().kind == TokKind::kEnd) lex_.fail("unterminated '{'");
      if (lex_.peek().kind == TokKind::kVar) {
        out.elements.push_back({parse_triple()});
        continue;
      }
      if (at_keyword("FILTER")) {
        out.elements.push_back({parse_filter()});
        continue;
      }
      if (at_keyword("MINUS")) {
        lex_.take();
        MinusExpr m;
        m.pattern.push_back(parse_group());
        out.elements.push_back({std::move(m)});
        continue;
      }
      if (at_punct("{")) {
        out.elements.push_back(parse_block());
        continue;
      }
      lex_.fail("expected a triple, FILTER, MINUS or a block");
    }
    lex_.take();  // consume '}'
    return out;
  }

  // A '{'-opened block: a subquery, or one or more UNION branches.
  GraphElement parse_block() {
    std::vector<GroupGraphPattern> branches;
    branches.push_back(parse_branch());
    while (at_keyword("UNION")) {
      lex_.take();
      branches.push_back(parse_branch());
    }
    if (branches.size() == 1) {
      // A single braced group: a subquery stays one element, anything
      // else joins the enclosing pattern through a one-branch union.
      if (branches[0].elements.size() == 1 &&
          std::holds_alternative<SubSelect>(branches[0].elements[0].node)) {
        return branches[0].elements[0];
      }
      UnionExpr u;
      u.branches = std::move(branches);
      return {std::move(u)};
    }
    UnionExpr u;
    u.branches = std::move(branches);
    return {std::move(u)};
  }

  GroupGraphPattern parse_branch() {
    // Lookahead after '{': SELECT starts a subquery.
    expect_punct("{");
    if (at_keyword("SELECT")) {
      SelectQuery sub = parse_select();
      expect_punct("}");
      GroupGraphPattern wrapper;
      wrapper.elements.push_back(
          {SubSelect{std::make_shared<SelectQuery>(std::move(sub))}});
      return wrapper;
    }
    GroupGraphPattern out;
    while (!at_punct("}")) {
      if (lex_.peek().kind == TokKind::kEnd) lex_.fail("unterminated '{'");
      if (lex_.peek().kind == TokKind::kVar) {
        out.elements.push_back({parse_triple()});
        continue;
      }
      if (at_keyword("FILTER")) {
        out.elements.push_back({parse_filter()});
        continue;
      }
      if (at_keyword("MINUS")) {
        lex_.take();
        MinusExpr m;
        m.pattern.push_back(parse_group());
        out.elements.push_back({std::move(m)});
        continue;
      }
      if (at_punct("{")) {
        out.elements.push_back(parse_block());
        continue;
      }
      lex_.fail("expected a triple, FILTER, MINUS or a block");
    }
    lex_.take();
    return out;
  }

  TriplePattern parse_triple() {
    TriplePattern t;
    t.subject = expect_var();
    if (lex_.peek().kind != TokKind::kArc)
      lex_.fail("expected an arc predicate");
    t.predicate = lex_.take().text;
    t.object = parse_term();
    expect_punct(".");
    return t;
  }

  TermPattern parse_term() {
    if (lex_.peek().kind == TokKind::kVar) return expect_var();
    return parse_literal();
  }

  Value parse_literal() {
    if (lex_.peek().kind == TokKind::kNumber) {
      return Value::number(lex_.take().number);
    }
    if (lex_.peek().kind == TokKind::kString) {
      std::string s = lex_.take().text;
      if (auto iso = normalize_date(s)) {
        if (*iso == s) return Value::date(s);
      }
      return Value::text(std::move(s));
    }
    lex_.fail("expected a literal");
  }

  FilterExpr parse_filter() {
    expect_keyword("FILTER");
    expect_punct("(");
    FilterExpr f;
    if (at_keyword("CONTAINS")) {
      lex_.take();
      expect_punct("(");
      f.op = FilterOp::kContains;
      f.lhs = parse_lcase_str_var();
      expect_punct(",");
      if (lex_.peek().kind == TokKind::kString) {
        f.rhs = Value::text(lex_.take().text);
      } else {
        f.rhs = parse_lcase_str_var();
      }
      expect_punct(")");
      expect_punct(")");
      return f;
    }
    f.lhs = expect_var();
    if (lex_.peek().kind != TokKind::kPunct) lex_.fail("expected an operator");
    std::string op = lex_.take().text;
    if (op == "=") {
      f.op = FilterOp::kEq;
    } else if (op == "!=") {
      f.op = FilterOp::kNe;
    } else if (op == "<") {
      f.op = FilterOp::kLt;
    } else if (op == "<=") {
      f.op = FilterOp::kLe;
    } else if (op == ">") {
      f.op = FilterOp::kGt;
    } else if (op == ">=") {
      f.op = FilterOp::kGe;
    } else {
      lex_.fail("unknown comparison operator " + op);
    }
    f.rhs = parse_term();
    expect_punct(")");
    return f;
  }

  // LCASE(STR(?v)) inside CONTAINS.
  Var parse_lcase_str_var() {
    expect_keyword("LCASE");
    expect_punct("(");
    expect_keyword("STR");
    expect_punct("(");
    Var v = expect_var();
    expect_punct(")");
    expect_punct(")");
    return v;
  }

  Lexer lex_;
};

}  // namespace

SelectQuery parse_sparql(const std::string& text) {
  return Parser(text).parse();
}

}  // namespace qdmr
