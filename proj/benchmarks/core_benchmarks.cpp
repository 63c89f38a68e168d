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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "qdmr/exec_match.hpp"
#include "qdmr/qdmr_parser.hpp"
#include "qdmr/rdf_graph.hpp"
#include "qdmr/ref_eval.hpp"
#include "qdmr/schema.hpp"
#include "qdmr/sparql_eval.hpp"
#include "qdmr/table_data.hpp"
#include "qdmr/transpiler.hpp"

namespace {

qdmr::Schema bench_schema() {
  return qdmr::Schema::from_json(R"({
    "tables": [
      {"name": "city",
       "columns": [{"name": "ID", "type": "number"},
                   {"name": "Name", "type": "text"},
                   {"name": "Size", "type": "number"}],
       "primary_key": "ID"},
      {"name": "shop",
       "columns": [{"name": "ID", "type": "number"},
                   {"name": "Label", "type": "text"},
                   {"name": "City_ID", "type": "number"}],
       "primary_key": "ID",
       "foreign_keys": [{"column": "City_ID",
                         "ref_table": "city", "ref_column": "ID"}]}
    ]})");
}

qdmr::TableData bench_data(size_t cities, size_t shops) {
  static const char* names[] = {"amber", "coral", "east", "west", "park"};
  std::vector<qdmr::Row> city;
  for (size_t i = 1; i <= cities; ++i) {
    city.push_back({qdmr::Value::number(static_cast<double>(i)),
                    qdmr::Value::text(names[i % 5]),
                    qdmr::Value::number(static_cast<double>(i % 9))});
  }
  std::vector<qdmr::Row> shop;
  for (size_t i = 1; i <= shops; ++i) {
    shop.push_back({qdmr::Value::number(static_cast<double>(i)),
                    qdmr::Value::text(names[(i * 3) % 5]),
                    qdmr::Value::number(static_cast<double>(1 + i % cities))});
  }
  return qdmr::TableData({std::move(city), std::move(shop)});
}

const std::string kGroupedCount =
    "#1 SELECT[shop]\n"
    "#2 PROJECT[city.Name, #1]\n"
    "#3 GROUP[count, #1, #2]";

void BM_ConvertToTriples(benchmark::State& state) {
  qdmr::Schema schema = bench_schema();
  qdmr::TableData data =
      bench_data(static_cast<size_t>(state.range(0)),
                 static_cast<size_t>(state.range(0)) * 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdmr::to_rdf(schema, data));
  }
}
BENCHMARK(BM_ConvertToTriples)->Arg(8)->Arg(64);

void BM_ParseAndTranspile(benchmark::State& state) {
  qdmr::Schema schema = bench_schema();
  for (auto _ : state) {
    qdmr::GroundedQdmr q = qdmr::parse_qdmr(kGroupedCount, schema);
    benchmark::DoNotOptimize(qdmr::transpile(q, schema));
  }
}
BENCHMARK(BM_ParseAndTranspile);

void BM_EvaluateQuery(benchmark::State& state) {
  qdmr::Schema schema = bench_schema();
  qdmr::TableData data =
      bench_data(static_cast<size_t>(state.range(0)),
                 static_cast<size_t>(state.range(0)) * 4);
  qdmr::GroundedQdmr q = qdmr::parse_qdmr(kGroupedCount, schema);
  qdmr::SparqlQuery query = qdmr::transpile(q, schema);
  qdmr::RdfGraph graph = qdmr::to_rdf(schema, data).graph;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdmr::evaluate(query, graph));
  }
}
BENCHMARK(BM_EvaluateQuery)->Arg(8)->Arg(64);

void BM_ReferenceInterpreter(benchmark::State& state) {
  qdmr::Schema schema = bench_schema();
  qdmr::TableData data =
      bench_data(static_cast<size_t>(state.range(0)),
                 static_cast<size_t>(state.range(0)) * 4);
  qdmr::GroundedQdmr q = qdmr::parse_qdmr(kGroupedCount, schema);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdmr::ref_evaluate(q, schema, data));
  }
}
BENCHMARK(BM_ReferenceInterpreter)->Arg(8)->Arg(64);

void BM_TableComparison(benchmark::State& state) {
  qdmr::Schema schema = bench_schema();
  qdmr::TableData data = bench_data(16, 64);
  qdmr::GroundedQdmr q = qdmr::parse_qdmr(kGroupedCount, schema);
  qdmr::ResultTable a =
      qdmr::standardize(qdmr::ref_evaluate(q, schema, data));
  // Reversed column order forces the permutation search.
  qdmr::ResultTable b = a;
  for (auto& row : b.rows) std::swap(row[0], row[1]);
  std::swap(b.columns[0], b.columns[1]);
  for (auto& col : b.columns) col.source.reset();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdmr::equivalent(a, b));
  }
}
BENCHMARK(BM_TableComparison);

}  // namespace

BENCHMARK_MAIN();
