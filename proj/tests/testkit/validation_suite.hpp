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
#include <vector>

#include "qdmr/logical_form.hpp"
#include "testkit/fixtures.hpp"

namespace qdmr::testkit {

// One curated validator case. Negatives expect exactly the named rule to
// fire; positives expect a clean report. `with_data` selects the overload
// that also runs the data-dependent rules.
struct ValidationCase {
  std::string name;
  std::string rule;  // expected rule id; empty for positives
  GroundedQdmr q;
  int fixture = 0;  // 0 school, 1 concert
  bool with_data = true;
};

// Negative suite: at least three cases per rule for each of the four
// grounding constraints (aggregation slot, comparative operand type,
// linked-value provenance, unlinked-value novelty).
std::vector<ValidationCase> validation_negatives();

// Positive suite: the bundled example decompositions plus linked-value and
// novel-value variants; all must validate clean.
std::vector<ValidationCase> validation_positives();

}  // namespace qdmr::testkit
