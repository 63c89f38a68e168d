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

#include "testkit/fixtures.hpp"

namespace qdmr::testkit {

Fixture school_fixture() {
  Schema schema = Schema::from_json(R"({
    "tables": [
      {"name": "school",
       "columns": [{"name": "ID", "type": "number"},
                   {"name": "State", "type": "text"}],
       "primary_key": "ID"},
      {"name": "teacher",
       "columns": [{"name": "ID", "type": "number"},
                   {"name": "Name", "type": "text"},
                   {"name": "School_ID", "type": "number"}],
       "primary_key": "ID",
       "foreign_keys": [{"column": "School_ID",
                         "ref_table": "school", "ref_column": "ID"}]}
    ]})");
  TableData data(std::vector<std::vector<Row>>{
      {{Value::number(1), Value::text("CA")},
       {Value::number(2), Value::text("TX")},
       {Value::number(3), Value::text("CA")}},
      {{Value::number(1), Value::text("Amy"), Value::number(1)},
       {Value::number(2), Value::text("Bob"), Value::number(1)},
       {Value::number(3), Value::text("Cal"), Value::number(2)},
       {Value::number(4), Value::text("Dee"), Value::number(3)},
       {Value::number(5), Value::text("Eli"), Value::number(2)},
       // Null name, School_ID 99 references nothing.
       {Value::number(6), Value::null(), Value::number(99)}}});
  return {std::move(schema), std::move(data)};
}

Fixture concert_fixture() {
  Schema schema = Schema::from_json(R"({
    "tables": [
      {"name": "stadium",
       "columns": [{"name": "Stadium_ID", "type": "number"},
                   {"name": "Location", "type": "text"},
                   {"name": "Name", "type": "text"},
                   {"name": "Capacity", "type": "number"}],
       "primary_key": "Stadium_ID"},
      {"name": "concert",
       "columns": [{"name": "Concert_ID", "type": "number"},
                   {"name": "Year", "type": "number"},
                   {"name": "Stadium_ID", "type": "number"}],
       "primary_key": "Concert_ID",
       "foreign_keys": [{"column": "Stadium_ID",
                         "ref_table": "stadium",
                         "ref_column": "Stadium_ID"}]}
    ]})");
  TableData data(std::vector<std::vector<Row>>{
      {{Value::number(1), Value::text("East"), Value::text("Alpha Park"),
        Value::number(4000)},
       {Value::number(2), Value::text("West"), Value::text("Beta Field"),
        Value::number(5000)},
       {Value::number(3), Value::text("North"), Value::text("Gamma Dome"),
        Value::number(10000)},
       {Value::number(4), Value::text("South"), Value::text("Delta Bowl"),
        Value::number(12000)},
       {Value::number(5), Value::text("East"), Value::text("Echo Court"),
        Value::number(7500)}},
      {{Value::number(1), Value::number(2014), Value::number(1)},
       {Value::number(2), Value::number(2014), Value::number(2)},
       {Value::number(3), Value::number(2015), Value::number(1)},
       {Value::number(4), Value::number(2013), Value::number(3)},
       {Value::number(5), Value::number(2015), Value::number(5)},
       {Value::number(6), Value::number(2015), Value::number(1)},
       {Value::number(7), Value::number(2012), Value::number(2)}}});
  return {std::move(schema), std::move(data)};
}

std::string table1_qdmr() {
  return "#1 SELECT[school.State]\n"
         "#2 PROJECT[teacher, #1]\n"
         "#3 GROUP[count, #2, #1]\n"
         "#4 UNION[#1, #3]";
}

std::string single_step_qdmr() { return "#1 SELECT[school.State]"; }

std::string concert_union_qdmr() {
  return "#1 SELECT[concert]\n"
         "#2 PROJECT[concert.Year, #1]\n"
         "#3 COMPARATIVE[#1,#2,=2014]\n"
         "#4 COMPARATIVE[#1,#2,=2015]\n"
         "#5 UNION[#3, #4]\n"
         "#6 AGGREGATE[count, #5]";
}

std::string concert_between_qdmr() {
  return "#1 SELECT[stadium]\n"
         "#2 PROJECT[stadium.Capacity, #1]\n"
         "#3 COMPARATIVE[#1,#2, >=5000]\n"
         "#4 COMPARATIVE[#1,#2, <=10000]\n"
         "#5 INTERSECTION[#1, #3, #4]\n"
         "#6 PROJECT[stadium.Location, #5]\n"
         "#7 PROJECT[stadium.Name, #5]\n"
         "#8 UNION[#6, #7]";
}

std::string concert_most_qdmr() {
  return "#1 SELECT[concert.Year]\n"
         "#2 PROJECT[concert, #1]\n"
         "#3 GROUP[count, #2, #1]\n"
         "#4 SUPERLATIVE[max, #1, #3]";
}

std::string concert_without_qdmr() {
  return "#1 SELECT[stadium]\n"
         "#2 COMPARATIVE[#1, #1, concert]\n"
         "#3 DISCARD[#1, #2]\n"
         "#4 PROJECT[stadium.Name, #3]";
}

std::string single_step_expected_sparql() {
  return "SELECT ?State WHERE {\n"
         "  ?ID arc:school:State ?State.}";
}

}  // namespace qdmr::testkit
