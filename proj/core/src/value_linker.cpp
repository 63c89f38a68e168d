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

#include "qdmr/value_linker.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

namespace qdmr {

namespace {

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> words = {
      "i",          "me",      "my",      "myself",  "we",      "our",
      "ours",       "ourselves", "you",   "your",    "yours",   "yourself",
      "yourselves", "he",      "him",     "his",     "himself", "she",
      "her",        "hers",    "herself", "it",      "its",     "itself",
      "they",       "them",    "their",   "theirs",  "themselves", "what",
      "which",      "who",     "whom",    "this",    "that",    "these",
      "those",      "am",      "is",      "are",     "was",     "were",
      "be",         "been",    "being",   "have",    "has",     "had",
      "having",     "do",      "does",    "did",     "doing",   "a",
      "an",         "the",     "and",     "but",     "if",      "or",
      "because",    "as",      "until",   "while",   "of",      "at",
      "by",         "for",     "with",    "about",   "against", "between",
      "into",       "through", "during",  "before",  "after",   "above",
      "below",      "to",      "from",    "up",      "down",    "in",
      "out",        "on",      "off",     "over",    "under",   "again",
      "further",    "then",    "once",    "here",    "there",   "when",
      "where",      "why",     "how",     "all",     "any",     "both",
      "each",       "few",     "more",    "most",    "other",   "some",
      "such",       "no",      "nor",     "not",     "only",    "own",
      "same",       "so",      "than",    "too",     "very",    "s",
      "t",          "can",     "will",    "just",    "don",     "should",
      "now",
  };
  return words;
}

// ---- Porter stemmer ----

bool is_vowel(const std::string& w, size_t i) {
  char c = w[i];
  if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
  // y counts as a vowel after a consonant
  if (c == 'y' && i > 0) return !is_vowel(w, i - 1);
  return false;
}

// Number of vowel-consonant transitions (the "measure") of w[0..end).
int measure(const std::string& w, size_t end) {
  int m = 0;
  bool in_vowel = false;
  for (size_t i = 0; i < end; ++i) {
    bool v = is_vowel(w, i);
    if (in_vowel && !v) ++m;
    in_vowel = v;
  }
  return m;
}

bool has_vowel(const std::string& w, size_t end) {
  for (size_t i = 0; i < end; ++i) {
    if (is_vowel(w, i)) return true;
  }
  return false;
}

bool double_consonant(const std::string& w) {
  size_t n = w.size();
  if (n < 2) return false;
  return w[n - 1] == w[n - 2] && !is_vowel(w, n - 1);
}

// consonant-vowel-consonant ending where the final consonant is not
// w, x or y.
bool cvc_end(const std::string& w) {
  size_t n = w.size();
  if (n < 3) return false;
  if (is_vowel(w, n - 1) || !is_vowel(w, n - 2) || is_vowel(w, n - 3))
    return false;
  char c = w[n - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, const char* suffix) {
  size_t len = std::char_traits<char>::length(suffix);
  if (w.size() < len) return false;
  return w.compare(w.size() - len, len, suffix) == 0;
}

// Replaces `suffix` by `repl` when the stem before it has measure > min_m.
bool replace_if(std::string& w, const char* suffix, const char* repl,
                int min_m) {
  if (!ends_with(w, suffix)) return false;
  size_t stem = w.size() - std::char_traits<char>::length(suffix);
  if (measure(w, stem) > min_m) {
    w = w.substr(0, stem) + repl;
  }
  return true;  // suffix recognized, even if measure blocked the rewrite
}

void step1a(std::string& w) {
  if (ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ies")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ss")) {
    // keep
  } else if (ends_with(w, "s") && w.size() > 1) {
    w.resize(w.size() - 1);
  }
}

void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
    return;
  }
  bool stripped = false;
  if (ends_with(w, "ed") && has_vowel(w, w.size() - 2)) {
    w.resize(w.size() - 2);
    stripped = true;
  } else if (ends_with(w, "ing") && has_vowel(w, w.size() - 3)) {
    w.resize(w.size() - 3);
    stripped = true;
  }
  if (!stripped) return;
  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (double_consonant(w) && !ends_with(w, "l") && !ends_with(w, "s") &&
             !ends_with(w, "z")) {
    w.resize(w.size() - 1);
  } else if (measure(w, w.size()) == 1 && cvc_end(w)) {
    w.push_back('e');
  }
}

void step1c(std::string& w) {
  if (ends_with(w, "y") && has_vowel(w, w.size() - 1)) {
    w[w.size() - 1] = 'i';
  }
}

void step2(std::string& w) {
  static const std::pair<const char*, const char*> rules[] = {
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
      {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
      {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
      {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
      {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
      {"iviti", "ive"},   {"biliti", "ble"},
  };
  for (const auto& [suffix, repl] : rules) {
    if (replace_if(w, suffix, repl, 0)) return;
  }
}

void step3(std::string& w) {
  static const std::pair<const char*, const char*> rules[] = {
      {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
      {"ical", "ic"},  {"ful", ""},   {"ness", ""},
  };
  for (const auto& [suffix, repl] : rules) {
    if (replace_if(w, suffix, repl, 0)) return;
  }
}

void step4(std::string& w) {
  static const char* suffixes[] = {
      "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement",
      "ment", "ent", "ion",  "ou",  "ism", "ate",  "iti",  "ous", "ive",
      "ize",
  };
  for (const char* suffix : suffixes) {
    if (!ends_with(w, suffix)) continue;
    size_t stem = w.size() - std::char_traits<char>::length(suffix);
    if (std::string(suffix) == "ion") {
      if (stem == 0 || (w[stem - 1] != 's' && w[stem - 1] != 't')) return;
    }
    if (measure(w, stem) > 1) w.resize(stem);
    return;
  }
}

void step5(std::string& w) {
  if (ends_with(w, "e")) {
    int m = measure(w, w.size() - 1);
    std::string trimmed = w.substr(0, w.size() - 1);
    if (m > 1 || (m == 1 && !cvc_end(trimmed))) w = trimmed;
  }
  if (ends_with(w, "ll") && measure(w, w.size()) > 1) {
    w.resize(w.size() - 1);
  }
}

}  // namespace

std::string porter_stem(const std::string& word) {
  if (word.size() <= 2) return word;
  for (char c : word) {
    if (!std::isalpha(static_cast<unsigned char>(c))) return word;
  }
  std::string w = word;
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5(w);
  return w;
}

double lcs_ratio(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return 0.0;
  // longest common contiguous substring
  std::vector<size_t> prev(b.size() + 1, 0);
  std::vector<size_t> cur(b.size() + 1, 0);
  size_t best = 0;
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1]) {
        cur[j] = prev[j - 1] + 1;
        best = std::max(best, cur[j]);
      } else {
        cur[j] = 0;
      }
    }
    std::swap(prev, cur);
  }
  return 2.0 * static_cast<double>(best) /
         static_cast<double>(a.size() + b.size());
}

std::vector<std::string> tokenize_question(const std::string& question) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty() && !stopwords().count(cur)) tokens.push_back(cur);
    cur.clear();
  };
  for (char c : question) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '.' || c == '-') {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else {
      flush();
    }
  }
  flush();
  // Dots and dashes stay only inside number- and date-like tokens.
  std::vector<std::string> out;
  for (std::string& t : tokens) {
    if (parse_number(t) || normalize_date(t)) {
      out.push_back(std::move(t));
      continue;
    }
    std::string plain;
    for (char c : t) {
      if (c == '.' || c == '-') {
        if (!plain.empty() && !stopwords().count(plain))
          out.push_back(plain);
        plain.clear();
      } else {
        plain.push_back(c);
      }
    }
    if (!plain.empty() && !stopwords().count(plain)) out.push_back(plain);
  }
  return out;
}

namespace {

struct RankKey {
  double score;
  bool has_source;
  std::string table;
  std::string column;
  std::string lexical;

  bool operator<(const RankKey& other) const {
    if (score != other.score) return score > other.score;
    if (has_source != other.has_source) return !has_source;
    if (table != other.table) return table < other.table;
    if (column != other.column) return column < other.column;
    return lexical < other.lexical;
  }
};

}  // namespace

std::vector<ValueCandidate> match_values(
    const std::vector<std::string>& question_tokens, const Schema& schema,
    const TableData& db, size_t k) {
  std::vector<std::string> stems;
  stems.reserve(question_tokens.size());
  for (const std::string& t : question_tokens) stems.push_back(porter_stem(t));

  std::vector<std::pair<RankKey, ValueCandidate>> scored;
  std::set<std::string> seen;

  for (size_t ti = 0; ti < schema.tables().size(); ++ti) {
    const Table& table = schema.tables()[ti];
    for (size_t ci = 0; ci < table.columns.size(); ++ci) {
      const Column& column = table.columns[ci];
      for (const Row& row : db.rows(ti)) {
        const Value& cell = row[ci];
        if (cell.is_null()) continue;
        std::string lexical = cell.lexical();
        std::string dedup = table.name + "\x1f" + column.name + "\x1f" + lexical;
        if (!seen.insert(dedup).second) continue;

        std::string lowered = to_lower(lexical);
        double score = 0.0;
        if (column.type == Datatype::kNumber) {
          for (const std::string& t : question_tokens) {
            auto n = parse_number(t);
            if (n && Value::number(*n).compare_total(cell) == 0) {
              score = 1.0;
              break;
            }
          }
        } else {
          std::string value_stem = porter_stem(lowered);
          for (size_t i = 0; i < question_tokens.size(); ++i) {
            if (value_stem == stems[i]) {
              score = 1.0;
              break;
            }
            score = std::max(score, lcs_ratio(lowered, question_tokens[i]));
          }
        }

        ValueCandidate cand;
        cand.value.lexical = lexical;
        cand.value.datatype = column.type;
        cand.value.source_column = ColumnRef{table.name, column.name};
        cand.score = score;
        scored.push_back(
            {RankKey{score, true, table.name, column.name, lexical}, cand});
      }
    }
  }

  // Number- and date-like question tokens become standalone candidates.
  std::set<std::string> extra_seen;
  for (const std::string& t : question_tokens) {
    std::optional<ValueRef> extra;
    if (auto n = parse_number(t)) {
      extra = ValueRef{format_number(*n), Datatype::kNumber, std::nullopt};
    } else if (auto d = normalize_date(t)) {
      extra = ValueRef{*d, Datatype::kDate, std::nullopt};
    }
    if (!extra) continue;
    if (!extra_seen.insert(extra->lexical).second) continue;
    ValueCandidate cand;
    cand.value = *extra;
    cand.score = 1.0;
    scored.push_back({RankKey{1.0, false, "", "", extra->lexical}, cand});
  }

  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ValueCandidate> out;
  for (const auto& [key, cand] : scored) {
    (void)key;
    if (out.size() >= k) break;
    out.push_back(cand);
  }
  return out;
}

}  // namespace qdmr
