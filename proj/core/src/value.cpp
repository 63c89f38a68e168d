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

#include "qdmr/value.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>

#include "qdmr/errors.hpp"

namespace qdmr {

std::string to_string(Datatype t) {
  switch (t) {
    case Datatype::kNumber:
      return "number";
    case Datatype::kText:
      return "text";
    case Datatype::kDate:
      return "date";
  }
  return "text";
}

Value Value::number(double v) {
  Value out;
  out.kind_ = Kind::kNumber;
  out.num_ = v;
  return out;
}

Value Value::text(std::string v) {
  Value out;
  out.kind_ = Kind::kText;
  out.str_ = std::move(v);
  return out;
}

Value Value::date(std::string iso) {
  Value out;
  out.kind_ = Kind::kDate;
  out.str_ = std::move(iso);
  return out;
}

double Value::as_number() const {
  if (kind_ != Kind::kNumber) throw MisuseError("value is not a number");
  return num_;
}

const std::string& Value::as_string() const {
  if (kind_ != Kind::kText && kind_ != Kind::kDate)
    throw MisuseError("value is not text or date");
  return str_;
}

std::string Value::lexical() const {
  switch (kind_) {
    case Kind::kNull:
      return "";
    case Kind::kNumber:
      return format_number(num_);
    case Kind::kText:
    case Kind::kDate:
      return str_;
  }
  return "";
}

int Value::compare_total(const Value& other) const {
  if (kind_ != other.kind_)
    return static_cast<int>(kind_) < static_cast<int>(other.kind_) ? -1 : 1;
  switch (kind_) {
    case Kind::kNull:
      return 0;
    case Kind::kNumber:
      if (num_ < other.num_) return -1;
      if (num_ > other.num_) return 1;
      return 0;
    case Kind::kText:
    case Kind::kDate:
      return str_.compare(other.str_) < 0 ? -1 : (str_ == other.str_ ? 0 : 1);
  }
  return 0;
}

std::optional<int> Value::compare_query(const Value& other) const {
  if (kind_ != other.kind_) return std::nullopt;
  if (kind_ == Kind::kNull) return std::nullopt;
  return compare_total(other);
}

bool Value::contains(const Value& needle) const {
  if (is_null() || needle.is_null()) return false;
  std::string hay = to_lower(lexical());
  std::string sub = to_lower(needle.lexical());
  return hay.find(sub) != std::string::npos;
}

size_t Value::hash() const {
  size_t seed = static_cast<size_t>(kind_);
  auto mix = [&seed](size_t h) {
    seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  };
  if (kind_ == Kind::kNumber) {
    mix(std::hash<double>()(num_ == 0.0 ? 0.0 : num_));
  } else {
    mix(std::hash<std::string>()(str_));
  }
  return seed;
}

std::string format_number(double v, int max_frac) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  double rounded = v;
  if (max_frac >= 0) {
    double scale = std::pow(10.0, max_frac);
    rounded = std::round(v * scale) / scale;
  }
  if (rounded == 0.0) rounded = 0.0;  // normalize -0
  if (std::abs(rounded) < 1e15 && rounded == std::floor(rounded)) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", rounded);
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", max_frac, rounded);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::optional<double> parse_number(std::string_view text) {
  std::string_view t = trim(text);
  if (t.empty()) return std::nullopt;
  std::string buf(t);
  const char* begin = buf.c_str();
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(begin, &end);
  if (end != begin + buf.size() || errno == ERANGE) return std::nullopt;
  if (std::isnan(v) || std::isinf(v)) return std::nullopt;
  return v;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

// Splits on a single separator character, requiring exactly `parts` fields.
std::optional<std::vector<std::string_view>> split_exact(std::string_view s,
                                                         char sep,
                                                         size_t parts) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  if (out.size() != parts) return std::nullopt;
  return out;
}

std::string pad2(std::string_view s) {
  std::string out(s);
  if (out.size() == 1) out.insert(out.begin(), '0');
  return out;
}

}  // namespace

std::optional<std::string> normalize_date(std::string_view text) {
  std::string_view t = trim(text);
  if (t.empty()) return std::nullopt;

  std::string_view date_part = t;
  std::string_view time_part;
  size_t space = t.find(' ');
  if (space != std::string_view::npos) {
    date_part = t.substr(0, space);
    time_part = trim(t.substr(space + 1));
  }

  char sep = date_part.find('-') != std::string_view::npos ? '-' : '/';
  auto fields = split_exact(date_part, sep, 3);
  if (!fields) return std::nullopt;
  auto& f = *fields;
  if (f[0].size() != 4 || !all_digits(f[0])) return std::nullopt;
  if (f[1].empty() || f[1].size() > 2 || !all_digits(f[1])) return std::nullopt;
  if (f[2].empty() || f[2].size() > 2 || !all_digits(f[2])) return std::nullopt;
  int month = std::stoi(std::string(f[1]));
  int day = std::stoi(std::string(f[2]));
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;

  std::string out(f[0]);
  out += '-';
  out += pad2(f[1]);
  out += '-';
  out += pad2(f[2]);

  if (!time_part.empty()) {
    auto hms = split_exact(time_part, ':', 3);
    if (!hms) {
      auto hm = split_exact(time_part, ':', 2);
      if (!hm) return std::nullopt;
      hms = std::vector<std::string_view>{(*hm)[0], (*hm)[1], "00"};
    }
    for (auto part : *hms) {
      if (part.empty() || part.size() > 2 || !all_digits(part))
        return std::nullopt;
    }
    out += ' ';
    out += pad2((*hms)[0]);
    out += ':';
    out += pad2((*hms)[1]);
    out += ':';
    out += pad2((*hms)[2]);
  }
  return out;
}

std::optional<Value> parse_as(Datatype t, std::string_view lexical) {
  switch (t) {
    case Datatype::kNumber: {
      auto v = parse_number(lexical);
      if (!v) return std::nullopt;
      return Value::number(*v);
    }
    case Datatype::kDate: {
      auto iso = normalize_date(lexical);
      if (!iso) return std::nullopt;
      return Value::date(*iso);
    }
    case Datatype::kText:
      return Value::text(std::string(trim(lexical)));
  }
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace qdmr
