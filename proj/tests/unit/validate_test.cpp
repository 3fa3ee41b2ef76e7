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

#include <doctest.h>

#include <functional>

#include "apkit/error.hpp"
#include "apkit/instance.hpp"
#include "apkit/validate.hpp"
#include "support/fixtures.hpp"
#include "support/random_documents.hpp"

using namespace apkit;
using apkit::testing::bundled_profile;
using apkit::testing::fixture;

namespace {

InstanceDocument yaml_doc(const std::string& root_class, const std::string& text) {
  return {root_class, node_from_yaml(text), "inline"};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an apkit::Error");
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("the NMR record conforms to the chem profile") {
  const auto report = validate(load_instance(fixture("instances/nmr-13c-ethyl-acetate.yaml"), "Dataset"),
                               bundled_profile("chem-dcat-ap"));
  CHECK(report.conformant());
  CHECK(report.findings().empty());
}

TEST_CASE("every manifest fixture behaves as declared") {
  const auto entries = apkit::testing::manifest();
  for (const auto& entry : entries.at("valid")) {
    const auto file = entry.at("file").get<std::string>();
    CAPTURE(file);
    const auto report = validate(load_instance(fixture("instances/" + file), entry.at("class").get<std::string>()),
                                 bundled_profile(entry.at("profile").get<std::string>()));
    CHECK(report.conformant());
  }
  for (const auto& entry : entries.at("mutants")) {
    const auto file = entry.at("file").get<std::string>();
    CAPTURE(file);
    const auto report = validate(load_instance(fixture("instances/" + file), entry.at("class").get<std::string>()),
                                 bundled_profile(entry.at("profile").get<std::string>()));
    REQUIRE(report.findings().size() == 1);
    CHECK(report.findings()[0].severity == Severity::kError);
    CHECK(report.findings()[0].rule == entry.at("rule").get<std::string>());
    CHECK(report.findings()[0].path == entry.at("path").get<std::string>());
  }
}

TEST_CASE("an empty map conforms to an all-optional class") {
  CHECK(validate(yaml_doc("Activity", "{}"), bundled_profile("chem-dcat-ap")).conformant());
  CHECK(validate(yaml_doc("Concept", "{}"), bundled_profile("dcat-ap-mini")).error_count() == 1);
}

TEST_CASE("reports aggregate findings in document order") {
  const auto report = validate(yaml_doc("Dataset", R"(
colour: blue
title: x
release_date: 2024-13-01
size: 3
)"),
                               bundled_profile("dcat-ap-mini"));
  REQUIRE(report.findings().size() == 4);
  CHECK(report.findings()[0].path == "/colour");
  CHECK(report.findings()[1].path == "/release_date");
  CHECK(report.findings()[2].path == "/size");
  CHECK(report.findings()[3].rule == "CARDINALITY");
  CHECK(report.findings()[3].path == "/description");
}

TEST_CASE("union ranges accept any member") {
  const auto& mini = bundled_profile("dcat-ap-mini");
  CHECK(validate(yaml_doc("CatalogRecord", R"(
primary_topic: {"@type": DataService, title: s, endpoint_url: "https://example.org/api"}
modification_date: 2024-01-01
)"),
                 mini)
            .conformant());
  CHECK(validate(yaml_doc("CatalogRecord", R"(
primary_topic: {title: d, description: e}
modification_date: 2024-01-01
)"),
                 mini)
            .conformant());
  const auto bad = validate(yaml_doc("CatalogRecord", R"(
primary_topic: {"@type": Agent, name: x}
modification_date: 2024-01-01
)"),
                            mini);
  REQUIRE(bad.findings().size() == 1);
  CHECK(bad.findings()[0].rule == "RANGE_CLASS");
}

TEST_CASE("class-valued slots accept IRI references") {
  const auto& mini = bundled_profile("dcat-ap-mini");
  CHECK(validate(yaml_doc("Dataset", "title: t\ndescription: d\npublisher: https://example.org/org/1\n"), mini).conformant());
  CHECK(validate(yaml_doc("Dataset", "title: t\ndescription: d\npublisher: not an iri\n"), mini).error_count() == 1);
}

TEST_CASE("an abstract root class is reported") {
  CHECK(validate(yaml_doc("ChemicalSubstance", "{}"), bundled_profile("chem-dcat-ap")).findings().at(0).rule ==
        "ABSTRACT_INSTANTIATION");
}

TEST_CASE("unknown root class") {
  CHECK(code_of([] { validate(yaml_doc("Nope", "{}"), bundled_profile("chem-dcat-ap")); }) == ErrorCode::kUnknownRootClass);
}

TEST_CASE("validate is deterministic") {
  const auto doc = load_instance(fixture("instances/mutants/nmr-wrong-range-class.yaml"), "Dataset");
  CHECK(validate(doc, bundled_profile("chem-dcat-ap")).to_json() == validate(doc, bundled_profile("chem-dcat-ap")).to_json());
}

TEST_CASE("projection renames sub-slots to their base ancestors") {
  const auto& chem = bundled_profile("chem-dcat-ap");
  const auto& plus = bundled_profile("dcat-ap-plus");
  const auto doc = load_instance(fixture("instances/reaction-hydrogenation.json"), "Dataset");
  const auto projected = project_to_base(doc, chem, plus);
  const auto* reaction = projected.root.find("was_generated_by")->find("evaluated_activity");
  REQUIRE(reaction);
  CHECK(reaction->find("used_catalyst") == nullptr);
  REQUIRE(reaction->find("carried_out_by"));
  CHECK(reaction->find("carried_out_by")->find("title")->text() == "platinum on carbon");
  REQUIRE(reaction->find("has_output_entity"));
  CHECK(reaction->find("generated_product") == nullptr);
  CHECK(reaction->find("@type")->text() == "EvaluatedActivity");
  const auto* input = reaction->find("has_input_entity");
  REQUIRE(input);
  CHECK(input->find("@type")->text() == "EvaluatedEntity");
  CHECK(input->find("inchikey") == nullptr);
  CHECK(input->find("has_quantitative_attribute"));
  CHECK(validate(projected, plus).conformant());
}

TEST_CASE("projection of a base-only document is the identity") {
  const auto& plus = bundled_profile("dcat-ap-plus");
  const auto& mini = bundled_profile("dcat-ap-mini");
  const auto doc = load_instance(fixture("instances/catalog-mini.yaml"), "Catalog");
  CHECK(project_to_base(doc, plus, mini) == doc);
}

TEST_CASE("projection requires an extension") {
  const auto& chem = bundled_profile("chem-dcat-ap");
  const auto& mini = bundled_profile("dcat-ap-mini");
  const auto doc = load_instance(fixture("instances/catalog-mini.yaml"), "Catalog");
  CHECK(code_of([&] { project_to_base(doc, mini, chem); }) == ErrorCode::kNotAnExtension);
}

TEST_CASE("projection soundness over random chem documents") {
  const auto& chem = bundled_profile("chem-dcat-ap");
  const auto& plus = bundled_profile("dcat-ap-plus");
  const auto& mini = bundled_profile("dcat-ap-mini");
  apkit::testing::RandomDocumentGenerator generator(chem, 4242);
  for (int i = 0; i < 200; ++i) {
    const auto doc = generator.document(i % 5 == 0 ? "ChemicalReaction" : "Dataset");
    CAPTURE(i);
    const auto base_report = validate(doc, chem);
    REQUIRE_MESSAGE(base_report.conformant(), base_report.to_text());
    const auto as_plus = project_to_base(doc, chem, plus);
    const auto plus_report = validate(as_plus, plus);
    REQUIRE_MESSAGE(plus_report.conformant(), plus_report.to_text());
    if (as_plus.root_class == "Dataset") {
      const auto mini_report = validate(project_to_base(as_plus, plus, mini), mini);
      REQUIRE_MESSAGE(mini_report.conformant(), mini_report.to_text());
    }
  }
}

TEST_CASE("YAML scalars keep their authored text") {
  const auto node = node_from_yaml("a: 2024-03-15\nb: 0.10\nc: 'true'\nd: true\ne: ~\nf: [1, x]\n");
  CHECK(node.find("a")->kind() == Node::Kind::kString);
  CHECK(node.find("b")->kind() == Node::Kind::kNumber);
  CHECK(node.find("b")->text() == "0.10");
  CHECK(node.find("c")->kind() == Node::Kind::kString);
  CHECK(node.find("d")->kind() == Node::Kind::kBoolean);
  CHECK(node.find("e")->kind() == Node::Kind::kNull);
  CHECK(node.find("f")->items().size() == 2);
  CHECK(code_of([] { node_from_yaml("a: [1, 2"); }) == ErrorCode::kMalformedInstance);
}
