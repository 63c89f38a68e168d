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

#include <gtest/gtest.h>

#include <algorithm>

#include "qdmr/exec_match.hpp"
#include "qdmr/qdmr_parser.hpp"
#include "qdmr/sparql_parser.hpp"
#include "qdmr/transpiler.hpp"
#include "testkit/checks.hpp"
#include "testkit/fixtures.hpp"

namespace qdmr {
namespace {

using testkit::concert_fixture;
using testkit::school_fixture;

RdfGraph school_graph() {
  testkit::Fixture f = school_fixture();
  return to_rdf(f.schema, f.data).graph;
}

RdfGraph concert_graph() {
  testkit::Fixture f = concert_fixture();
  return to_rdf(f.schema, f.data).graph;
}

ResultTable run_text(const RdfGraph& g, const std::string& text) {
  return evaluate(parse_sparql(text), g);
}

TEST(SparqlEval, OneRowPerMatchingArc) {
  ResultTable r =
      run_text(school_graph(), testkit::single_step_expected_sparql());
  std::string detail;
  EXPECT_TRUE(testkit::rows_equal_unordered(
      r,
      {{Value::text("CA")}, {Value::text("TX")}, {Value::text("CA")}},
      &detail))
      << detail;
}

TEST(SparqlEval, UngroupedAggregatesOverEmptyMatch) {
  RdfGraph g = school_graph();
  ResultTable count = run_text(
      g, "SELECT (COUNT(?x) AS ?n) WHERE {\n  ?x arc:school:Missing ?y .\n}");
  ASSERT_EQ(count.row_count(), 1u);
  EXPECT_EQ(count.rows[0][0].as_number(), 0.0);

  ResultTable sum = run_text(
      g, "SELECT (SUM(?y) AS ?n) WHERE {\n  ?x arc:school:Missing ?y .\n}");
  ASSERT_EQ(sum.row_count(), 1u);
  EXPECT_EQ(sum.rows[0][0].as_number(), 0.0);

  // Extremes and means of nothing yield nothing.
  for (const char* fn : {"MIN", "MAX", "AVG"}) {
    ResultTable r = run_text(
        g, std::string("SELECT (") + fn +
               "(?y) AS ?n) WHERE {\n  ?x arc:school:Missing ?y .\n}");
    EXPECT_EQ(r.row_count(), 0u) << fn;
  }

  // Grouped aggregation over nothing has no groups.
  ResultTable grouped = run_text(
      g,
      "SELECT ?y (COUNT(?x) AS ?n) WHERE {\n"
      "  ?x arc:school:Missing ?y .\n"
      "}\n"
      "GROUP BY ?y");
  EXPECT_EQ(grouped.row_count(), 0u);
}

TEST(SparqlEval, RangeQueryAgreesWithReferenceInterpreter) {
  testkit::Fixture f = concert_fixture();
  GroundedQdmr q = parse_qdmr(testkit::concert_between_qdmr(), f.schema);
  testkit::EngineRun run = testkit::run_both(f.schema, f.data, q);
  std::string detail;
  EXPECT_TRUE(testkit::engines_agree(run, &detail)) << detail;
}

TEST(SparqlEval, DistinctDropsOnlyDuplicates) {
  RdfGraph g = concert_graph();
  ResultTable all = run_text(
      g, "SELECT ?L WHERE {\n  ?s arc:stadium:Location ?L .\n}");
  ResultTable uniq = run_text(
      g, "SELECT DISTINCT ?L WHERE {\n  ?s arc:stadium:Location ?L .\n}");
  EXPECT_EQ(all.row_count(), 5u);
  EXPECT_EQ(uniq.row_count(), 4u);
  // Every distinct row appears in the full bag.
  for (const auto& row : uniq.rows) {
    EXPECT_NE(std::find_if(all.rows.begin(), all.rows.end(),
                           [&](const auto& r) { return r[0] == row[0]; }),
              all.rows.end());
  }
  // No duplicates remain.
  for (size_t i = 0; i < uniq.rows.size(); ++i)
    for (size_t j = i + 1; j < uniq.rows.size(); ++j)
      EXPECT_FALSE(uniq.rows[i][0] == uniq.rows[j][0]);
}

TEST(SparqlEval, MinusIsContainedInLeft) {
  RdfGraph g = concert_graph();
  ResultTable left = run_text(
      g, "SELECT ?N WHERE {\n"
         "  ?s arc:stadium:Stadium_ID ?s .\n"
         "  ?s arc:stadium:Name ?N .\n"
         "}");
  ResultTable diff = run_text(
      g,
      "SELECT ?N WHERE {\n"
      "  ?s arc:stadium:Stadium_ID ?s .\n"
      "  ?s arc:stadium:Name ?N .\n"
      "  MINUS {\n"
      "    ?c arc:concert:Stadium_ID:stadium:Stadium_ID ?s .\n"
      "  }\n"
      "}");
  EXPECT_EQ(left.row_count(), 5u);
  ASSERT_EQ(diff.row_count(), 1u);
  EXPECT_EQ(diff.rows[0][0].as_string(), "Delta Bowl");
}

TEST(SparqlEval, UnionKeepsBagCardinality) {
  RdfGraph g = concert_graph();
  ResultTable r = run_text(
      g,
      "SELECT ?y WHERE {\n"
      "  {\n"
      "    ?c arc:concert:Year ?y .\n"
      "    FILTER(?y = 2014)\n"
      "  } UNION {\n"
      "    ?c arc:concert:Year ?y .\n"
      "    FILTER(?y >= 2014)\n"
      "  }\n"
      "}");
  // Two rows match the first branch, five the second; overlaps stay.
  EXPECT_EQ(r.row_count(), 7u);
}

TEST(SparqlEval, CrossKindComparisonsAreFalse) {
  RdfGraph g = concert_graph();
  for (const char* op : {"=", "!=", "<", ">="}) {
    ResultTable r = run_text(
        g, std::string("SELECT ?y WHERE {\n  ?c arc:concert:Year ?y .\n"
                       "  FILTER(?y ") +
               op + " \"pluto\")\n}");
    EXPECT_EQ(r.row_count(), 0u) << op;
  }
}

TEST(SparqlEval, ContainsFilterIsCaseInsensitiveSubstring) {
  RdfGraph g = concert_graph();
  ResultTable r = run_text(
      g,
      "SELECT ?N WHERE {\n"
      "  ?s arc:stadium:Name ?N .\n"
      "  FILTER(CONTAINS(LCASE(STR(?N)), \"park\"))\n"
      "}");
  ASSERT_EQ(r.row_count(), 1u);
  EXPECT_EQ(r.rows[0][0].as_string(), "Alpha Park");
}

TEST(SparqlEval, OrderBySortsAndRecordsKeys) {
  testkit::Fixture f = concert_fixture();
  SparqlQuery q = transpile(parse_qdmr("#1 SELECT[stadium]\n"
                                       "#2 PROJECT[stadium.Capacity, #1]\n"
                                       "#3 SORT[#2, #2, asc]",
                                       f.schema),
                            f.schema);
  ResultTable r = evaluate(q, to_rdf(f.schema, f.data).graph);
  ASSERT_TRUE(r.sort.has_value());
  EXPECT_EQ(r.sort->direction, SortDirection::kAsc);
  ASSERT_EQ(r.sort->keys.size(), r.row_count());
  for (size_t i = 1; i < r.sort->keys.size(); ++i)
    EXPECT_LE(r.sort->keys[i - 1].compare_total(r.sort->keys[i]), 0);
  ASSERT_EQ(r.row_count(), 5u);
  EXPECT_EQ(r.rows[0][0].as_number(), 4000.0);
  EXPECT_EQ(r.rows[4][0].as_number(), 12000.0);
}

TEST(SparqlEval, RepeatedRunsAreIdentical) {
  testkit::Fixture f = concert_fixture();
  RdfGraph g = to_rdf(f.schema, f.data).graph;
  SparqlQuery q =
      transpile(parse_qdmr(testkit::concert_between_qdmr(), f.schema),
                f.schema);
  ResultTable a = evaluate(q, g);
  ResultTable b = evaluate(q, g);
  ASSERT_EQ(a.row_count(), b.row_count());
  for (size_t r = 0; r < a.row_count(); ++r)
    for (size_t c = 0; c < a.width(); ++c)
      EXPECT_TRUE(a.rows[r][c] == b.rows[r][c]);
}

// The result bag must not depend on the order of the basic graph
// patterns inside a group.
TEST(SparqlEval, JoinOrderDoesNotChangeResults) {
  testkit::Fixture school = school_fixture();
  testkit::Fixture concert = concert_fixture();
  const std::pair<const testkit::Fixture*, std::string> cases[] = {
      {&school, testkit::table1_qdmr()},
      {&concert, testkit::concert_union_qdmr()},
      {&concert, testkit::concert_between_qdmr()},
      {&concert, testkit::concert_most_qdmr()},
      {&concert, testkit::concert_without_qdmr()},
  };
  for (const auto& [f, text] : cases) {
    RdfGraph g = to_rdf(f->schema, f->data).graph;
    SparqlQuery q = transpile(parse_qdmr(text, f->schema), f->schema);
    ResultTable base = standardize(evaluate(q, g));

    SparqlQuery shuffled = q;
    std::reverse(shuffled.ast.where.elements.begin(),
                 shuffled.ast.where.elements.end());
    ResultTable alt = standardize(evaluate(shuffled, g));
    MatchVerdict v = equivalent(base, alt);
    EXPECT_TRUE(v.match) << text << "\nrule: " << v.rule;
  }
}

}  // namespace
}  // namespace qdmr
