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
#include <optional>

#include "apkit/error.hpp"
#include "apkit/instance.hpp"
#include "apkit/rdf.hpp"
#include "apkit/validate.hpp"
#include "support/fixtures.hpp"

using namespace apkit;
using apkit::testing::bundled_profile;
using apkit::testing::fixture;

namespace {

const std::string kRdfTypeIri(ns::kRdfType);

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an apkit::Error");
  return ErrorCode::kIo;
}

InstanceDocument nmr() { return load_instance(fixture("instances/nmr-13c-ethyl-acetate.yaml"), "Dataset"); }

std::size_t count_predicate(const TripleSet& ts, const std::string& subject, const std::string& predicate) {
  std::size_t n = 0;
  for (const auto& t : ts.triples()) {
    if (t.subject.value == subject && t.predicate.value == predicate) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("a classified activity carries two rdf:type triples") {
  const auto ts = to_triples(nmr(), bundled_profile("chem-dcat-ap"));
  std::optional<Term> activity;
  for (const auto& t : ts.triples()) {
    if (t.predicate.value == kRdfTypeIri && t.object.value == "http://purl.obolibrary.org/obo/CHMO_0000595") activity = t.subject;
  }
  REQUIRE(activity);
  std::set<std::string> types;
  for (const auto& t : ts.triples()) {
    if (t.predicate.value == kRdfTypeIri && t.subject == *activity) types.insert(t.object.value);
  }
  CHECK(types == std::set<std::string>{"http://purl.obolibrary.org/obo/CHMO_0000595",
                                       bundled_profile("chem-dcat-ap").find_class("DataGeneratingActivity")->class_uri});
}

TEST_CASE("an empty document yields its type triple only") {
  const InstanceDocument doc{"Activity", Node::map(), "empty"};
  const auto ts = to_triples(doc, bundled_profile("chem-dcat-ap"));
  REQUIRE(ts.size() == 1);
  CHECK(ts.triples()[0].subject.kind == Term::Kind::kBlank);
  CHECK(ts.triples()[0].predicate.value == kRdfTypeIri);
  CHECK(to_ntriples(TripleSet{}).empty());
}

TEST_CASE("typed literals carry the datatype IRI") {
  const auto text = to_ntriples(to_triples(nmr(), bundled_profile("chem-dcat-ap")));
  CHECK(text.find("\"2024-03-15\"^^<http://www.w3.org/2001/XMLSchema#date>") != std::string::npos);
  CHECK(text.find("\"0.1\"^^<http://www.w3.org/2001/XMLSchema#decimal>") != std::string::npos);
  CHECK(text.find("XMLSchema#string") == std::string::npos);
}

TEST_CASE("serialization is deterministic and round-trips") {
  const auto& chem = bundled_profile("chem-dcat-ap");
  const auto first = to_ntriples(to_triples(nmr(), chem));
  const auto second = to_ntriples(to_triples(nmr(), chem));
  CHECK(first == second);
  const auto parsed = parse_ntriples(first);
  CHECK(parsed.as_set() == to_triples(nmr(), chem).as_set());
  CHECK(to_ntriples(parsed) == first);
}

TEST_CASE("N-Triples escapes survive a round trip") {
  TripleSet ts;
  ts.add({Term::iri("https://example.org/s"), Term::iri("https://example.org/p"), Term::literal("a \"quoted\"\nline\\")});
  ts.add({Term::blank("x"), Term::iri("https://example.org/p"), Term::literal("5", "http://www.w3.org/2001/XMLSchema#integer")});
  CHECK(parse_ntriples(to_ntriples(ts)).as_set() == ts.as_set());
  CHECK(code_of([] { parse_ntriples("<a> <b> \"c\"\n"); }) == ErrorCode::kMalformedRdf);
  CHECK(code_of([] { parse_ntriples("\"a\" <b> <c> .\n"); }) == ErrorCode::kMalformedRdf);
}

TEST_CASE("turtle output groups by subject") {
  const auto& chem = bundled_profile("chem-dcat-ap");
  const auto ttl = serialize(to_triples(nmr(), chem), RdfFormat::kTurtle, chem.prefix_map);
  CHECK(ttl.find("@prefix dcat: <http://www.w3.org/ns/dcat#> .") != std::string::npos);
  CHECK(ttl.find("<https://example.org/dataset/nmr-13c-ethyl-acetate> a dcat:Dataset") != std::string::npos);
}

TEST_CASE("non-conformant documents are refused") {
  const auto doc = load_instance(fixture("instances/mutants/nmr-bad-date.yaml"), "Dataset");
  CHECK(code_of([&] { to_triples(doc, bundled_profile("chem-dcat-ap")); }) == ErrorCode::kNotConformant);
}

TEST_CASE("materialization adds super-property triples") {
  const auto& chem = bundled_profile("chem-dcat-ap");
  const auto doc = load_instance(fixture("instances/reaction-hydrogenation.json"), "Dataset");
  const auto ts = to_triples(doc, chem);
  const auto full = materialize_super_properties(ts, chem);
  const Triple catalyst{Term::iri("https://example.org/activity/reaction-7"),
                        Term::iri("http://www.w3.org/ns/prov#wasAssociatedWith"),
                        Term::iri("https://example.org/agent/pt-on-carbon")};
  CHECK_FALSE(ts.contains(catalyst));
  CHECK(full.contains(catalyst));

  std::size_t expected = ts.size();
  for (const auto& t : ts.triples()) {
    for (const auto& [name, slot] : chem.slots) {
      if (slot.slot_uri != t.predicate.value) continue;
      std::set<std::string> ancestors;
      for (auto s = slot.super_slot; s; s = chem.slots.at(*s).super_slot) {
        const auto& uri = chem.slots.at(*s).slot_uri;
        if (uri != t.predicate.value) ancestors.insert(uri);
      }
      for (const auto& uri : ancestors) {
        if (!ts.contains({t.subject, Term::iri(uri), t.object})) ++expected;
      }
      break;
    }
  }
  CHECK(full.size() == expected);
  CHECK(materialize_super_properties(full, chem).as_set() == full.as_set());
}

TEST_CASE("projection commutes with emission up to entailment") {
  const auto& chem = bundled_profile("chem-dcat-ap");
  const auto& plus = bundled_profile("dcat-ap-plus");
  const auto doc = load_instance(fixture("instances/reaction-hydrogenation.json"), "Dataset");
  const auto entailed = materialize_super_properties(to_triples(doc, chem), chem);
  const auto projected = to_triples(project_to_base(doc, chem, plus), plus);
  for (const auto& t : projected.triples()) {
    if (t.predicate.value == kRdfTypeIri) continue;
    CAPTURE(ntriples_term(t.predicate));
    CHECK(entailed.contains(t));
  }
  CHECK(count_predicate(projected, "https://example.org/activity/reaction-7", "http://www.w3.org/ns/prov#wasAssociatedWith") == 1);
}
