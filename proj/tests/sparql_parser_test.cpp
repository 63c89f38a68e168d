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

#include <gtest/gtest.h>

#include "qdmr/errors.hpp"
#include "qdmr/qdmr_parser.hpp"
#include "qdmr/sparql_ast.hpp"
#include "qdmr/transpiler.hpp"
#include "testkit/checks.hpp"
#include "testkit/fixtures.hpp"

namespace qdmr {
namespace {

TEST(SparqlParser, SingleTriplePatternQuery) {
  SelectQuery q = parse_sparql(testkit::single_step_expected_sparql());
  EXPECT_FALSE(q.distinct);
  ASSERT_EQ(q.projection.size(), 1u);
  EXPECT_EQ(std::get<Var>(q.projection[0].expr).name, "State");
  ASSERT_EQ(q.where.elements.size(), 1u);
  const auto& tp = std::get<TriplePattern>(q.where.elements[0].node);
  EXPECT_EQ(tp.subject.name, "ID");
  EXPECT_EQ(tp.predicate, "arc:school:State");
  EXPECT_EQ(std::get<Var>(tp.object).name, "State");
  EXPECT_TRUE(q.group_by.empty());
  EXPECT_FALSE(q.order_by.has_value());
}

TEST(SparqlParser, WhitespaceAndKeywordCaseAreFree) {
  SelectQuery a = parse_sparql(
      "select ?x where{?y arc:t:c ?x.\n\n   FILTER(?x >= 10)}");
  ASSERT_EQ(a.where.elements.size(), 2u);
  const auto& f = std::get<FilterExpr>(a.where.elements[1].node);
  EXPECT_EQ(f.op, FilterOp::kGe);
  EXPECT_EQ(f.lhs.name, "x");
  EXPECT_EQ(std::get<Value>(f.rhs).as_number(), 10.0);
}

TEST(SparqlParser, LiteralTypes) {
  SelectQuery q = parse_sparql(
      "SELECT ?a WHERE {\n"
      "  ?a arc:t:num 5 .\n"
      "  ?a arc:t:txt \"hello there\" .\n"
      "  ?a arc:t:day \"2014-01-02\" .\n"
      "}");
  const auto& num = std::get<TriplePattern>(q.where.elements[0].node);
  EXPECT_TRUE(std::get<Value>(num.object).is_number());
  const auto& txt = std::get<TriplePattern>(q.where.elements[1].node);
  EXPECT_TRUE(std::get<Value>(txt.object).is_text());
  // Quoted ISO dates read back as dates so graph lookups see date terms.
  const auto& day = std::get<TriplePattern>(q.where.elements[2].node);
  EXPECT_TRUE(std::get<Value>(day.object).is_date());
}

TEST(SparqlParser, RoundTripIsIdentityOnCompiledQueries) {
  testkit::Fixture school = testkit::school_fixture();
  testkit::Fixture concert = testkit::concert_fixture();
  const std::pair<const Schema*, std::string> cases[] = {
      {&school.schema, testkit::table1_qdmr()},
      {&school.schema, testkit::single_step_qdmr()},
      {&concert.schema, testkit::concert_union_qdmr()},
      {&concert.schema, testkit::concert_between_qdmr()},
      {&concert.schema, testkit::concert_most_qdmr()},
      {&concert.schema, testkit::concert_without_qdmr()},
  };
  for (const auto& [schema, text] : cases) {
    SparqlQuery q = transpile(parse_qdmr(text, *schema), *schema);
    std::string detail;
    EXPECT_TRUE(testkit::sparql_roundtrip_ok(q.text, &detail)) << detail;
  }
}

TEST(SparqlParser, RoundTripCoversEveryConstruct) {
  // Subquery, UNION, MINUS, GROUP BY, aggregates with DISTINCT, ORDER BY,
  // filters of every comparator, and the containment filter.
  const std::string text =
      "SELECT DISTINCT ?a (COUNT(?b) AS ?c) WHERE {\n"
      "  ?a arc:t:c ?b .\n"
      "  {\n"
      "    SELECT (AVG(DISTINCT ?x) AS ?y) WHERE {\n"
      "      ?x arc:t:c 5 .\n"
      "    }\n"
      "  }\n"
      "  {\n"
      "    ?a arc:t:d \"x\" .\n"
      "  } UNION {\n"
      "    ?a arc:t:d \"y\" .\n"
      "  }\n"
      "  MINUS {\n"
      "    ?a arc:t:e ?z .\n"
      "  }\n"
      "  FILTER(?b != 3)\n"
      "  FILTER(?b <= ?y)\n"
      "  FILTER(CONTAINS(LCASE(STR(?a)), \"park\"))\n"
      "}\n"
      "GROUP BY ?a\n"
      "ORDER BY DESC(?c)";
  SelectQuery q = parse_sparql(text);
  std::string once = serialize_sparql(q);
  SelectQuery again = parse_sparql(once);
  EXPECT_EQ(serialize_sparql(again), once);
}

TEST(SparqlParser, UnsupportedFeatures) {
  EXPECT_THROW(parse_sparql("SELECT ?a WHERE { OPTIONAL { ?a arc:t:c ?b . } }"),
               UnsupportedFeatureError);
  EXPECT_THROW(parse_sparql("PREFIX ex: <http://x> SELECT ?a WHERE { }"),
               UnsupportedFeatureError);
  EXPECT_THROW(
      parse_sparql("SELECT ?a WHERE { ?a arc:t:c ?b . } LIMIT 1"),
      UnsupportedFeatureError);
  EXPECT_THROW(
      parse_sparql(
          "SELECT ?a WHERE { ?a arc:t:c ?b . } GROUP BY ?a HAVING (?a > 1)"),
      UnsupportedFeatureError);
  EXPECT_THROW(parse_sparql("ASK { ?a arc:t:c ?b . }"),
               UnsupportedFeatureError);
}

TEST(SparqlParser, SyntaxErrors) {
  EXPECT_THROW(parse_sparql(""), SyntaxError);
  EXPECT_THROW(parse_sparql("not a query"), SyntaxError);
  EXPECT_THROW(parse_sparql("SELECT ?a WHERE { ?a arc:t:c ?b"), SyntaxError);
  EXPECT_THROW(parse_sparql("SELECT WHERE { ?a arc:t:c ?b . }"), SyntaxError);
}

}  // namespace
}  // namespace qdmr
