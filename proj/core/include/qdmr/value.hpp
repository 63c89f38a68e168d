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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qdmr {

enum class Datatype { kNumber, kText, kDate };

std::string to_string(Datatype t);

// A typed cell value. There are four kinds: null, number, text and date.
// Dates carry a normalized ISO-8601 lexical form (YYYY-MM-DD, optionally
// followed by " HH:MM:SS"), so their byte order is chronological order.
class Value {
 public:
  enum class Kind { kNull, kNumber, kText, kDate };

  Value() : kind_(Kind::kNull) {}

  static Value null() { return Value(); }
  static Value number(double v);
  static Value text(std::string v);
  // The argument must already be a normalized ISO-8601 form; use
  // normalize_date() for free-form input.
  static Value date(std::string iso);

  Kind kind() const { return kind_; }
  bool is_null() const { return kind_ == Kind::kNull; }
  bool is_number() const { return kind_ == Kind::kNumber; }
  bool is_text() const { return kind_ == Kind::kText; }
  bool is_date() const { return kind_ == Kind::kDate; }

  // Misuse of these accessors on the wrong kind throws MisuseError.
  double as_number() const;
  const std::string& as_string() const;

  // Canonical string form: numbers in canonical decimal notation, text and
  // dates verbatim, null as the empty string.
  std::string lexical() const;

  // Total order: null < number < text < date. Numbers compare by value and
  // strings bytewise. This order only exists to make iteration and output
  // deterministic; query comparisons use compare_query() below.
  int compare_total(const Value& other) const;
  bool operator==(const Value& other) const { return compare_total(other) == 0; }
  bool operator<(const Value& other) const { return compare_total(other) < 0; }

  // Query-level comparison. Values of different kinds (or nulls) are
  // incomparable and every comparison on them evaluates to false.
  // Returns -1/0/+1 when comparable.
  std::optional<int> compare_query(const Value& other) const;

  // Case-insensitive substring containment of `needle`'s lexical form in
  // this value's lexical form. Null operands never match.
  bool contains(const Value& needle) const;

  size_t hash() const;

 private:
  Kind kind_;
  double num_ = 0.0;
  std::string str_;
};

// Canonical decimal notation: integral values without a fractional part,
// otherwise up to `max_frac` fractional digits with trailing zeros removed.
std::string format_number(double v, int max_frac = 10);

// Whether the text parses as a number in its entirety (after trimming).
std::optional<double> parse_number(std::string_view text);

// Accepts YYYY-M-D and YYYY/M/D with an optional H:M[:S] tail and returns
// the zero-padded ISO form, or nullopt if the text is not date-like.
std::optional<std::string> normalize_date(std::string_view text);

// Parses `lexical` as the given datatype, or nullopt if it cannot be cast.
std::optional<Value> parse_as(Datatype t, std::string_view lexical);

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

}  // namespace qdmr
