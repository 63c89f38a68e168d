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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qdmr/value.hpp"

namespace qdmr {

enum class Op {
  kSelect,
  kProject,
  kComparative,
  kSuperlative,
  kAggregate,
  kGroup,
  kUnion,
  kIntersect,
  kDiscard,
  kSort,
};

enum class Comparator { kEq, kNe, kGt, kLt, kGe, kLe, kLike };
enum class Aggregator { kCount, kSum, kAvg, kMin, kMax };
enum class SortDirection { kAsc, kDesc };

std::string to_string(Op op);
std::string to_string(Comparator c);
std::string to_string(Aggregator a);
std::string to_string(SortDirection d);

struct TableRef {
  std::string table;
};

struct ColumnRef {
  std::string table;
  std::string column;

  bool operator==(const ColumnRef& other) const {
    return table == other.table && column == other.column;
  }
};

// A constant mentioned by a step. When the value was linked to a database
// column, source_column records where it came from.
struct ValueRef {
  std::string lexical;
  Datatype datatype = Datatype::kText;
  std::optional<ColumnRef> source_column;
};

using Grounding = std::variant<TableRef, ColumnRef, ValueRef>;

// Reference to an earlier step (1-based).
struct StepRef {
  int index = 0;
};

// Aggregation slot: an aggregator, or a column grounding (a decomposition
// that names the attribute to read rather than a function to apply).
using AggregatorSlot = std::variant<Aggregator, Grounding>;

struct SelectArgs {
  Grounding subject;
  bool distinct = false;
};

struct ProjectArgs {
  Grounding projection;
  StepRef subject;
  bool distinct = false;
};

// Third slot of COMPARATIVE: absent (plain relatedness to the attribute),
// a grounded constant or entity, or an earlier step's output.
using ComparativeOperand = std::variant<std::monostate, Grounding, StepRef>;

struct ComparativeArgs {
  StepRef subject;
  StepRef attribute;
  std::optional<Comparator> comparator;
  ComparativeOperand operand;
  bool distinct = false;
};

struct SuperlativeArgs {
  Aggregator op = Aggregator::kMax;  // kMin or kMax
  StepRef subject;
  StepRef attribute;
};

struct AggregateArgs {
  AggregatorSlot op;
  StepRef subject;
};

struct GroupArgs {
  AggregatorSlot op;
  StepRef values;
  StepRef key;
};

struct UnionArgs {
  std::vector<StepRef> parts;  // two or more
};

struct IntersectArgs {
  StepRef projection;
  StepRef left;
  StepRef right;
};

struct DiscardArgs {
  StepRef from;
  StepRef exclude;
};

struct SortArgs {
  StepRef subject;
  StepRef key;
  SortDirection direction = SortDirection::kAsc;
};

using StepArgs =
    std::variant<SelectArgs, ProjectArgs, ComparativeArgs, SuperlativeArgs,
                 AggregateArgs, GroupArgs, UnionArgs, IntersectArgs,
                 DiscardArgs, SortArgs>;

struct Step {
  int index = 0;  // 1-based position
  Op op = Op::kSelect;
  StepArgs args;
};

// A grounded decomposition: steps numbered 1..n, the last step is the
// output, and every reference points strictly backwards.
struct GroundedQdmr {
  std::vector<Step> steps;

  const Step& output() const { return steps.back(); }
  const Step& step(int index) const { return steps[static_cast<size_t>(index) - 1]; }
};

// Indices of the steps `step` references, in argument order.
std::vector<int> step_refs(const Step& step);

// Canonical one-line-per-step surface form. Parsing the result yields an
// identical structure.
std::string serialize(const GroundedQdmr& q);
std::string serialize(const Step& step);

// Step indices in evaluation order: a step appears after everything it
// references; unrelated steps keep ascending index order.
std::vector<int> dependency_order(const GroundedQdmr& q);

}  // namespace qdmr
