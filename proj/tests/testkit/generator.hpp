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

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qdmr/schema.hpp"
#include "qdmr/table_data.hpp"

namespace qdmr::testkit {

// One randomized database plus a decomposition that is valid over it.
struct GenCase {
  Schema schema;
  TableData data;
  std::string qdmr_text;
  int template_id = 0;
  // -1 none, 0 vertical, 1 all-scalar, 2 attribute, 3 after-group.
  int union_variant = -1;
};

// Deterministic stream of randomized cases. Databases have 2-3 tables
// (every non-first table reaches an earlier one through a foreign key) and
// at most 8 rows per table; decompositions cycle through a template roster
// that covers every operator and every union variant.
class CaseGenerator {
 public:
  static constexpr int kTemplateCount = 21;

  explicit CaseGenerator(uint64_t seed) : rng_(seed) {}

  GenCase next();

  // QDMR_SPARQL_SEED overrides the built-in seed when set.
  static uint64_t seed_from_env(uint64_t fallback);

 private:
  std::mt19937_64 rng_;
  int counter_ = 0;
};

// Differential harness: for `count` generated cases, checks that the
// transpile-and-evaluate route agrees with the row-level interpreter, and
// that both surface forms round-trip through their parsers.
struct DiffStats {
  int total = 0;
  int agreed = 0;
  int qdmr_roundtrips = 0;
  int sparql_roundtrips = 0;
  std::map<std::string, int> op_counts;
  std::array<int, 4> union_variants{};
  std::vector<std::string> failures;  // first few, for diagnostics
};

DiffStats run_differential(uint64_t seed, int count);

}  // namespace qdmr::testkit
