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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qdmr/errors.hpp"
#include "qdmr/exec_match.hpp"
#include "qdmr/qdmr_parser.hpp"
#include "qdmr/rdf_graph.hpp"
#include "qdmr/ref_eval.hpp"
#include "qdmr/sparql_eval.hpp"
#include "qdmr/table_data.hpp"
#include "qdmr/transpiler.hpp"
#include "qdmr/value_linker.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qdmr::InputError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qdmr::InputError("cannot write " + path);
  out << content;
}

struct Database {
  qdmr::Schema schema;
  qdmr::TableData data;
};

// Loads schema + CSV directory and guarantees single-column keys.
Database load_database(const std::string& schema_path,
                       const std::string& data_dir) {
  qdmr::Schema schema = qdmr::Schema::from_json(read_file(schema_path));
  schema.check();
  qdmr::TableData data = qdmr::load_csv_dir(schema, data_dir);
  auto [keyed_schema, keyed_data] = qdmr::ensure_key(schema, data);
  return {std::move(keyed_schema), std::move(keyed_data)};
}

int cmd_convert(const std::string& schema_path, const std::string& data_dir,
                const std::string& out_path) {
  Database db = load_database(schema_path, data_dir);
  qdmr::RdfResult rdf = qdmr::to_rdf(db.schema, db.data);
  std::string dump = rdf.graph.dump();
  if (out_path.empty()) {
    std::cout << dump;
  } else {
    write_file(out_path, dump);
  }
  for (const auto& d : rdf.dangling) {
    std::cerr << "dangling foreign key: " << d.table << "." << d.column
              << " row " << d.row_ordinal << " value " << d.value.lexical()
              << "\n";
  }
  return kOk;
}

int cmd_transpile(const std::string& schema_path, const std::string& qdmr_path,
                  bool sparql_only) {
  qdmr::Schema schema = qdmr::Schema::from_json(read_file(schema_path));
  schema.check();
  qdmr::GroundedQdmr q = qdmr::parse_qdmr(read_file(qdmr_path), schema);
  qdmr::SparqlQuery query = qdmr::transpile(q, schema);
  std::cout << query.text << "\n";
  if (!sparql_only) {
    std::cout << "# outputs:";
    for (const auto& out : query.outputs) std::cout << " " << out.name;
    std::cout << "\n";
  }
  return kOk;
}

int cmd_run(const std::string& schema_path, const std::string& data_dir,
            const std::string& qdmr_path) {
  Database db = load_database(schema_path, data_dir);
  qdmr::GroundedQdmr q = qdmr::parse_qdmr(read_file(qdmr_path), db.schema);
  qdmr::SparqlQuery query = qdmr::transpile(q, db.schema);
  qdmr::RdfGraph graph = qdmr::to_rdf(db.schema, db.data).graph;
  qdmr::ResultTable result = qdmr::evaluate(query, graph);
  std::cout << result.to_csv();
  return kOk;
}

// Differential check of the two execution routes for one decomposition.
bool engines_agree(const Database& db, const qdmr::GroundedQdmr& q,
                   std::string* detail) {
  qdmr::SparqlQuery query = qdmr::transpile(q, db.schema);
  qdmr::RdfGraph graph = qdmr::to_rdf(db.schema, db.data).graph;
  qdmr::ResultTable via_sparql =
      qdmr::standardize(qdmr::evaluate(query, graph));
  qdmr::ResultTable via_rows =
      qdmr::standardize(qdmr::ref_evaluate(q, db.schema, db.data));
  qdmr::MatchVerdict verdict = qdmr::equivalent(via_sparql, via_rows);
  if (!verdict.match) {
    *detail = "row multisets differ (" + verdict.rule + ")";
    return false;
  }
  if (via_sparql.sort && via_rows.sort &&
      !qdmr::match_sorted(via_sparql, via_rows)) {
    *detail = "row order differs beyond equal-key blocks";
    return false;
  }
  *detail = verdict.rule;
  return true;
}

int cmd_verify_single(const std::string& schema_path,
                      const std::string& data_dir,
                      const std::string& qdmr_path) {
  Database db = load_database(schema_path, data_dir);
  qdmr::GroundedQdmr q = qdmr::parse_qdmr(read_file(qdmr_path), db.schema);
  std::string detail;
  if (engines_agree(db, q, &detail)) {
    std::cout << "match (" << detail << ")\n";
    return kOk;
  }
  std::cout << "mismatch: " << detail << "\n";
  return kMismatch;
}

std::map<std::string, std::string> read_options_file(
    const std::filesystem::path& path) {
  std::map<std::string, std::string> options;
  if (!std::filesystem::exists(path)) return options;
  std::istringstream in(read_file(path.string()));
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key(qdmr::trim(line.substr(0, eq)));
    std::string value(qdmr::trim(line.substr(eq + 1)));
    if (!key.empty()) options[key] = value;
  }
  return options;
}

// One fixture directory: schema.json, data/, qdmr.txt, optional gold.csv
// and options ("limit1=true", "sort_key=<column>").
int cmd_verify_suite(const std::string& suite_dir) {
  std::vector<std::filesystem::path> cases;
  for (const auto& entry : std::filesystem::directory_iterator(suite_dir)) {
    if (entry.is_directory()) cases.push_back(entry.path());
  }
  std::sort(cases.begin(), cases.end());
  if (cases.empty()) throw qdmr::InputError("no fixture directories in " +
                                            suite_dir);

  size_t passed = 0;
  for (const auto& dir : cases) {
    std::string name = dir.filename().string();
    std::string status;
    try {
      Database db = load_database((dir / "schema.json").string(),
                                  (dir / "data").string());
      qdmr::GroundedQdmr q =
          qdmr::parse_qdmr(read_file((dir / "qdmr.txt").string()), db.schema);
      std::string detail;
      bool ok = engines_agree(db, q, &detail);
      if (ok && std::filesystem::exists(dir / "gold.csv")) {
        auto options = read_options_file(dir / "options");
        qdmr::SparqlQuery query = qdmr::transpile(q, db.schema);
        qdmr::RdfGraph graph = qdmr::to_rdf(db.schema, db.data).graph;
        qdmr::ResultTable pred =
            qdmr::standardize(qdmr::evaluate(query, graph));
        qdmr::ResultTable gold = qdmr::standardize(
            qdmr::ResultTable::from_csv(read_file((dir / "gold.csv").string())));
        if (options.count("limit1") && options.at("limit1") == "true") {
          ok = qdmr::limit1_contained(gold, pred);
          detail = "limit1";
        } else {
          qdmr::MatchVerdict v = qdmr::equivalent(pred, gold);
          ok = v.match;
          detail = v.rule;
          if (ok && options.count("sort_key")) {
            ok = qdmr::match_sorted(pred, gold, options.at("sort_key"));
            if (!ok) detail = "row order differs beyond equal-key blocks";
          }
        }
      }
      status = ok ? "PASS" : "FAIL (" + detail + ")";
      if (ok) ++passed;
    } catch (const qdmr::Error& e) {
      status = std::string("FAIL (") + e.what() + ")";
    }
    std::cout << name << ": " << status << "\n";
  }
  std::cout << "execution accuracy: " << passed << "/" << cases.size() << "\n";
  return passed == cases.size() ? kOk : kMismatch;
}

int cmd_evaluate(const std::string& pred_path, const std::string& gold_path,
                 bool gold_limit1, const std::string& sort_key) {
  qdmr::ResultTable pred =
      qdmr::standardize(qdmr::ResultTable::from_csv(read_file(pred_path)));
  qdmr::ResultTable gold =
      qdmr::standardize(qdmr::ResultTable::from_csv(read_file(gold_path)));

  nlohmann::json out;
  bool match = false;
  if (gold_limit1) {
    match = qdmr::limit1_contained(gold, pred);
    out["rule_applied"] = "limit1";
  } else {
    qdmr::MatchVerdict v = qdmr::equivalent(pred, gold);
    match = v.match;
    out["rule_applied"] = v.rule;
    out["column_permutation"] = v.column_permutation;
    if (match && !sort_key.empty()) {
      match = qdmr::match_sorted(pred, gold, sort_key);
      if (!match) out["rule_applied"] = "sorted-order";
    }
  }
  out["match"] = match;
  std::cout << out.dump(2) << "\n";
  return match ? kOk : kMismatch;
}

int cmd_link(const std::string& question, const std::string& schema_path,
             const std::string& data_dir, size_t top_k) {
  qdmr::Schema schema = qdmr::Schema::from_json(read_file(schema_path));
  schema.check();
  qdmr::TableData data = qdmr::load_csv_dir(schema, data_dir);
  std::vector<std::string> tokens = qdmr::tokenize_question(question);
  std::vector<qdmr::ValueCandidate> candidates =
      qdmr::match_values(tokens, schema, data, top_k);

  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : candidates) {
    nlohmann::json item;
    item["value"] = c.value.lexical;
    item["datatype"] = qdmr::to_string(c.value.datatype);
    if (c.value.source_column) {
      item["table"] = c.value.source_column->table;
      item["column"] = c.value.source_column->column;
    }
    item["score"] = c.score;
    out.push_back(std::move(item));
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grounded decomposition to SPARQL transpiler and executor"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file with key=value flags");

  std::string schema_path, data_dir, qdmr_path, out_path;
  std::string pred_path, gold_path, sort_key, question, suite_dir;
  bool sparql_only = false;
  bool gold_limit1 = false;
  size_t top_k = 25;

  CLI::App* convert =
      app.add_subcommand("convert", "Encode a database as triples");
  convert->add_option("--schema", schema_path, "Schema JSON")->required();
  convert->add_option("--data", data_dir, "CSV directory")->required();
  convert->add_option("--out", out_path, "Output file (default stdout)");

  CLI::App* transpile =
      app.add_subcommand("transpile", "Compile a decomposition to SPARQL");
  transpile->add_option("--schema", schema_path, "Schema JSON")->required();
  transpile->add_option("--qdmr", qdmr_path, "Decomposition file")->required();
  transpile->add_flag("--emit-sparql-only", sparql_only,
                      "Print only the query text");

  CLI::App* run = app.add_subcommand("run", "Execute a decomposition");
  run->add_option("--schema", schema_path, "Schema JSON")->required();
  run->add_option("--data", data_dir, "CSV directory")->required();
  run->add_option("--qdmr", qdmr_path, "Decomposition file")->required();

  CLI::App* verify =
      app.add_subcommand("verify", "Cross-check the two execution routes");
  verify->add_option("--schema", schema_path, "Schema JSON");
  verify->add_option("--data", data_dir, "CSV directory");
  verify->add_option("--qdmr", qdmr_path, "Decomposition file");
  verify->add_option("--suite", suite_dir, "Fixture directory tree");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Compare two result tables");
  evaluate->add_option("--pred", pred_path, "Predicted CSV")->required();
  evaluate->add_option("--gold", gold_path, "Gold CSV")->required();
  evaluate->add_flag("--gold-limit1", gold_limit1,
                     "Gold is a single extremal row; check containment");
  evaluate->add_option("--sort-key", sort_key,
                       "Match row order up to ties in this column");

  CLI::App* link =
      app.add_subcommand("link", "Rank database values against a question");
  link->add_option("--question", question, "Question text")->required();
  link->add_option("--schema", schema_path, "Schema JSON")->required();
  link->add_option("--data", data_dir, "CSV directory")->required();
  link->add_option("--top-k", top_k, "Number of candidates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (convert->parsed()) return cmd_convert(schema_path, data_dir, out_path);
    if (transpile->parsed())
      return cmd_transpile(schema_path, qdmr_path, sparql_only);
    if (run->parsed()) return cmd_run(schema_path, data_dir, qdmr_path);
    if (verify->parsed()) {
      if (!suite_dir.empty()) return cmd_verify_suite(suite_dir);
      if (schema_path.empty() || data_dir.empty() || qdmr_path.empty())
        throw qdmr::InputError(
            "verify needs --schema, --data and --qdmr, or --suite");
      return cmd_verify_single(schema_path, data_dir, qdmr_path);
    }
    if (evaluate->parsed())
      return cmd_evaluate(pred_path, gold_path, gold_limit1, sort_key);
    if (link->parsed())
      return cmd_link(question, schema_path, data_dir, top_k);
  } catch (const qdmr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
