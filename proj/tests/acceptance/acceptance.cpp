// Copyright 2026 The apkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "apkit/artifact.hpp"
#include "apkit/harvest.hpp"
#include "apkit/instance.hpp"
#include "apkit/profile_extend.hpp"
#include "apkit/rdf.hpp"
#include "apkit/schema_ir.hpp"
#include "apkit/shacl.hpp"
#include "apkit/validate.hpp"
#include "../support/fixtures.hpp"
#include "../support/mock_server.hpp"
#include "../support/random_documents.hpp"

namespace {

using namespace apkit;
using namespace apkit::testing;
using Clock = std::chrono::steady_clock;

constexpr double kPortingBudgetSeconds = 1.0;
constexpr double kValidationBudgetSeconds = 1.0;
constexpr double kHarvestBudgetSeconds = 5.0;
constexpr int kProjectionDocuments = 200;
constexpr std::uint32_t kProjectionSeed = 20240315;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_seconds(double s) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3fs", s);
  return buffer;
}

CompileResult compile_mini() {
  return compile(parse_jsonld(read_text(fixture("shacl/dcat-ap-mini.jsonld"))), "dcat-ap-mini", "3.0.0");
}

Outcome porting_fidelity() {
  const auto start = Clock::now();
  const auto result = compile_mini();
  const double elapsed = seconds_since(start);
  const auto dir = scratch_dir("acceptance-porting");
  save_profile(result.ir, dir / "dcat-ap-mini.profile.json");
  const auto oracle = run_process(python_oracle("iri_fidelity.py") + " " + quote(fixture("shacl/dcat-ap-mini.jsonld")) +
                                  " " + quote(dir / "dcat-ap-mini.profile.json"));
  std::string summary = oracle.output.substr(oracle.output.rfind("classes="));
  if (!summary.empty() && summary.back() == '\n') summary.pop_back();
  return {oracle.status == 0 && elapsed < kPortingBudgetSeconds && result.report.conformant(),
          summary + ", compile " + format_seconds(elapsed) + " (limit " + format_seconds(kPortingBudgetSeconds) + ")"};
}

Outcome union_and_date_rules() {
  const auto ir = compile_mini().ir;
  const auto* topic = ir.find_slot("primary_topic");
  const auto* modified = ir.find_slot("modification_date");
  const auto* issued = ir.find_slot("release_date");
  const bool union_ok = topic != nullptr && topic->slot_uri == "http://xmlns.com/foaf/0.1/primaryTopic" &&
                        topic->range == RangeSpec::of_union({"Dataset", "DataService"}) && topic->min_cardinality == 1 &&
                        topic->max_cardinality == 1;
  const bool date_ok = modified != nullptr && issued != nullptr && modified->range == RangeSpec::of_datatype("date") &&
                       issued->range == RangeSpec::of_datatype("date");
  return {union_ok && date_ok, std::string("primary_topic ") + (union_ok ? "UNION[Dataset, DataService]" : "mismatch") +
                                   ", modification_date/release_date " + (date_ok ? "date" : "mismatch")};
}

Outcome layer_admissibility() {
  const auto& mini = bundled_profile("dcat-ap-mini");
  const auto& plus = bundled_profile("dcat-ap-plus");
  const auto plus_report = lint_extension(mini, builtin_layer_for("plus", mini));
  const auto chem_report = lint_extension(plus, builtin_layer_for("chem", plus));
  bool pass = plus_report.empty() && chem_report.empty();
  std::ostringstream detail;
  detail << "builtin findings plus=" << plus_report.findings().size() << " chem=" << chem_report.findings().size();
  const std::vector<std::pair<std::string, std::string>> bad = {{"duplicate-slot-uri", "DUPLICATE_SEMANTICS"},
                                                                {"broadened-cardinality", "BROADENED_CARDINALITY"},
                                                                {"dropped-mandatory", "MANDATORY_DROPPED"}};
  for (const auto& [file, expected] : bad) {
    const auto report = lint_extension(mini, load_layer(fixture("layers/" + file + ".layer.json")));
    const bool ok = report.findings().size() == 1 && report.findings().front().rule == expected;
    pass = pass && ok;
    detail << ", " << file << "=" << (report.findings().empty() ? "none" : report.findings().front().rule)
           << (report.findings().size() > 1 ? "+more" : "");
  }
  return {pass, detail.str()};
}

Outcome sub_property_lineage() {
  const auto& chem = bundled_profile("chem-dcat-ap");
  const std::vector<std::pair<std::string, std::string>> chains = {{"used_catalyst", "carried_out_by"},
                                                                   {"generated_product", "has_output_entity"},
                                                                   {"evaluated_entity", "has_input_entity"},
                                                                   {"has_concentration", "has_quantitative_attribute"}};
  bool pass = true;
  int resolved = 0;
  for (const auto& [sub, super] : chains) {
    const auto* slot = chem.find_slot(sub);
    const bool ok = slot != nullptr && slot->super_slot == super && chem.find_slot(super) != nullptr &&
                    range_narrows(chem, chem.find_slot(super)->range, slot->range);
    resolved += ok ? 1 : 0;
    pass = pass && ok;
  }
  const auto* catalyst = chem.find_slot("used_catalyst");
  const auto* product = chem.find_slot("generated_product");
  const bool uris = catalyst != nullptr && product != nullptr &&
                    catalyst->slot_uri == "http://purl.obolibrary.org/obo/RXNO_0000425" &&
                    product->slot_uri == "http://purl.obolibrary.org/obo/RO_0004008";
  return {pass && uris, std::to_string(resolved) + "/4 chains resolve, OBO PURLs " + (uris ? "match" : "differ")};
}

Outcome nmr_validation() {
  const auto& chem = bundled_profile("chem-dcat-ap");
  const auto start = Clock::now();
  const auto valid = validate(load_instance(fixture("instances/nmr-13c-ethyl-acetate.yaml"), "Dataset"), chem);
  bool pass = valid.conformant() && valid.findings().empty();
  int exact = 0;
  const auto mutants = manifest().at("mutants");
  for (const auto& m : mutants) {
    const auto report = validate(load_instance(fixture("instances/" + m.at("file").get<std::string>()), "Dataset"), chem);
    const bool ok = report.error_count() == 1 && report.findings().size() == 1 &&
                    report.findings().front().rule == m.at("rule").get<std::string>() &&
                    report.findings().front().path == m.at("path").get<std::string>();
    exact += ok ? 1 : 0;
  }
  const double elapsed = seconds_since(start);
  pass = pass && exact == static_cast<int>(mutants.size()) && mutants.size() == 6 && elapsed < kValidationBudgetSeconds;
  return {pass, std::string("fixture ") + (valid.conformant() ? "conformant" : "NOT conformant") + ", " +
                    std::to_string(exact) + "/" + std::to_string(mutants.size()) + " mutants with exactly one ERROR at path, " +
                    format_seconds(elapsed) + " (limit " + format_seconds(kValidationBudgetSeconds) + ")"};
}

Outcome projection_soundness() {
  const auto& chem = bundled_profile("chem-dcat-ap");
  const auto& plus = bundled_profile("dcat-ap-plus");
  const auto& mini = bundled_profile("dcat-ap-mini");
  RandomDocumentGenerator generator(chem, kProjectionSeed);
  int failures = 0;
  int unsound_inputs = 0;
  std::string first_failure;
  for (int i = 0; i < kProjectionDocuments; ++i) {
    const auto doc = generator.document("Dataset");
    if (!validate(doc, chem).conformant()) {
      ++unsound_inputs;
      continue;
    }
    const auto as_plus = project_to_base(doc, chem, plus);
    const auto plus_report = validate(as_plus, plus);
    const auto as_mini = project_to_base(as_plus, plus, mini);
    const auto mini_report = validate(as_mini, mini);
    if (!plus_report.conformant() || !mini_report.conformant()) {
      ++failures;
      if (first_failure.empty()) {
        first_failure = " first failure #" + std::to_string(i) + ": " +
                        (plus_report.conformant() ? mini_report : plus_report).findings().front().rule;
      }
    }
  }
  return {failures == 0 && unsound_inputs == 0,
          std::to_string(kProjectionDocuments) + " documents, " + std::to_string(failures) + " projection failures, " +
              std::to_string(unsound_inputs) + " non-conformant inputs" + first_failure};
}

Outcome rdf_determinism() {
  const auto& chem = bundled_profile("chem-dcat-ap");
  const auto path = fixture("instances/nmr-13c-ethyl-acetate.yaml");
  const auto first = to_ntriples(to_triples(load_instance(path, "Dataset"), chem));
  const auto second = to_ntriples(to_triples(load_instance(path, "Dataset"), chem));
  const auto triples = to_triples(load_instance(path, "Dataset"), chem);
  const bool stable = first == second;
  const bool round_trip = parse_ntriples(first).as_set() == triples.as_set();
  const auto oracle = run_process(python_oracle("triple_count.py") + " " + quote(path));
  const auto predicted = oracle.status == 0 ? std::stoul(oracle.output) : 0UL;
  const bool count_ok = predicted == triples.size();
  return {stable && round_trip && count_ok, std::string("byte-stable=") + (stable ? "yes" : "no") +
                                                ", reparse-equal=" + (round_trip ? "yes" : "no") + ", triples=" +
                                                std::to_string(triples.size()) + " oracle=" + std::to_string(predicted)};
}

Outcome shacl_round_trip() {
  bool pass = true;
  std::string detail;
  for (const std::string id : {"dcat-ap-mini", "dcat-ap-plus", "chem-dcat-ap"}) {
    const auto& ir = bundled_profile(id);
    const auto text = gen_shacl(ir, ShapeIriPolicy::fragment("https://example.org/shapes/" + id), ShaclSyntax::kJsonLd);
    const auto again = compile(parse_jsonld(text), id, ir.version);
    const bool equal = content_view(again.ir) == content_view(ir) && again.report.conformant();
    pass = pass && equal;
    detail += (detail.empty() ? "" : ", ") + id + (equal ? " fixpoint" : " DIFFERS");
  }
  return {pass, detail};
}

Outcome jsonschema_oracle() {
  const auto dir = scratch_dir("acceptance-jsonschema");
  const auto entries = manifest();
  int valid_ok = 0;
  int valid_total = 0;
  int invalid_ok = 0;
  int invalid_total = 0;
  for (const auto* group : {"valid", "mutants"}) {
    for (const auto& entry : entries.at(group)) {
      const auto profile = entry.at("profile").get<std::string>();
      const auto root = entry.at("class").get<std::string>();
      const auto schema_path = dir / (profile + "." + root + ".schema.json");
      if (!std::filesystem::exists(schema_path)) {
        write_text(schema_path, gen_jsonschema(bundled_profile(profile), root).dump(2));
      }
      const auto result = run_process(python_oracle("jsonschema_check.py") + " " + quote(schema_path) + " " +
                                      quote(fixture("instances/" + entry.at("file").get<std::string>())));
      const bool accepted = result.status == 0 && result.output.rfind("VALID ", 0) == 0;
      if (std::string(group) == "valid") {
        ++valid_total;
        valid_ok += accepted ? 1 : 0;
      } else {
        ++invalid_total;
        invalid_ok += (result.status == 0 && !accepted) ? 1 : 0;
      }
    }
  }
  return {valid_ok == valid_total && invalid_ok == invalid_total && valid_total > 0,
          std::to_string(valid_ok) + "/" + std::to_string(valid_total) + " valid accepted, " +
              std::to_string(invalid_ok) + "/" + std::to_string(invalid_total) + " mutants rejected"};
}

Outcome harvest_run() {
  MockCatalogServer server;
  server.serve_fixture("page-1.json");
  server.serve_fixture("page-2.json");
  HarvestSource source;
  source.name = "mock-chem-catalog";
  source.url = server.url("page-1.json");
  source.profile = bundled_profile_path("chem-dcat-ap");
  source.root_class = "Dataset";
  const auto dir = scratch_dir("acceptance-harvest");
  const auto start = Clock::now();
  const auto first = harvest(source, dir);
  const auto graph_first = read_text(dir / "graph.nt");
  const auto second = harvest(source, dir);
  const auto graph_second = read_text(dir / "graph.nt");
  const double elapsed = seconds_since(start);

  std::set<std::string> subjects;
  bool only_conformant = true;
  const auto parsed = parse_ntriples(graph_first);
  for (const auto& triple : parsed.triples()) {
    if (triple.subject.kind == Term::Kind::kIri) subjects.insert(triple.subject.value);
    if (triple.subject.value == "https://example.org/harvest/dataset-4") only_conformant = false;
  }
  for (const auto* id : {"https://example.org/harvest/dataset-1", "https://example.org/harvest/dataset-2",
                         "https://example.org/harvest/dataset-3"}) {
    only_conformant = only_conformant && subjects.contains(id);
  }
  int invalid_with_error = 0;
  for (const auto& r : first.reports) invalid_with_error += (!r.conformant && r.report.error_count() >= 1) ? 1 : 0;
  const bool counts = first.fetched == 4 && first.conformant == 3 && first.pages == 2 && invalid_with_error == 1;
  const bool idempotent = graph_first == graph_second && second.fetched == first.fetched &&
                          second.conformant == first.conformant && !graph_first.empty();
  return {counts && only_conformant && idempotent && elapsed < kHarvestBudgetSeconds,
          "fetched=" + std::to_string(first.fetched) + " conformant=" + std::to_string(first.conformant) +
              " pages=" + std::to_string(first.pages) + ", graph " + (only_conformant ? "conformant-only" : "LEAKS") +
              ", re-run " + (idempotent ? "byte-identical" : "DIFFERS") + ", " + format_seconds(elapsed) + " (limit " +
              format_seconds(kHarvestBudgetSeconds) + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"porting fidelity", porting_fidelity},
      {"union and date rules", union_and_date_rules},
      {"layer admissibility", layer_admissibility},
      {"sub-property lineage", sub_property_lineage},
      {"NMR fixture validation", nmr_validation},
      {"projection soundness", projection_soundness},
      {"RDF determinism and round-trip", rdf_determinism},
      {"SHACL round-trip fixpoint", shacl_round_trip},
      {"JSON Schema oracle", jsonschema_oracle},
      {"harvest run", harvest_run},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += outcome.pass ? 0 : 1;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " [" << index << "] " << name << ": " << outcome.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
