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

#pragma once

#include <string>

#include "qdmr/schema.hpp"
#include "qdmr/table_data.hpp"

namespace qdmr::testkit {

struct Fixture {
  Schema schema;
  TableData data;
};

// Two-table database: school(ID, State) with three rows and
// teacher(ID, Name, School_ID -> school.ID) with six rows. Teacher 6 has a
// null Name and a dangling School_ID, exercising null and skip paths.
// Expected triples: school 3*(1+1) + teacher 5*(1+2) + 1*(1+1) + 5 FK = 28.
Fixture school_fixture();

// Two-table database: stadium(Stadium_ID, Location, Name, Capacity) with
// five rows and concert(Concert_ID, Year, Stadium_ID -> stadium) with seven
// rows. Stadium 4 hosts no concert.
// Expected triples: stadium 5*(1+3) + concert 7*(1+2) + 7 FK = 48.
Fixture concert_fixture();

// Decomposition texts used across suites.
std::string table1_qdmr();        // per-state teacher counts
std::string single_step_qdmr();   // one-step state selection
std::string concert_union_qdmr();     // years 2014/2015, counted
std::string concert_between_qdmr();   // capacity range, location+name
std::string concert_most_qdmr();      // year with most concerts
std::string concert_without_qdmr();   // stadiums hosting nothing

// Reference query text the one-step selection must compile to, compared
// ignoring whitespace.
std::string single_step_expected_sparql();

}  // namespace qdmr::testkit
