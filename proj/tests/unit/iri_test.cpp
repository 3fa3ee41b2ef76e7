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

#include "apkit/iri.hpp"

using namespace apkit;

TEST_CASE("local names follow the last hash or slash") {
  CHECK(local_name("http://www.w3.org/ns/dcat#Dataset") == "Dataset");
  CHECK(local_name("http://www.w3.org/ns/prov#Activity") == "Activity");
  CHECK(local_name("http://purl.org/dc/terms/title") == "title");
}

TEST_CASE("colliding local names are numbered in first-seen order") {
  NameRegistry names;
  CHECK(names.name_for_iri("http://xmlns.com/foaf/0.1/Agent") == "Agent");
  CHECK(names.name_for_iri("http://www.w3.org/ns/prov#Agent") == "Agent_2");
  CHECK(names.name_for_iri("http://xmlns.com/foaf/0.1/Agent") == "Agent");
  CHECK(names.name_for_iri("http://example.org/x/Agent") == "Agent_3");
  CHECK(names.claim("Agent") == "Agent_4");
}

TEST_CASE("CURIE expansion uses the given prefixes and leaves absolute IRIs alone") {
  const PrefixMap prefixes = {{"dcat", "http://www.w3.org/ns/dcat#"}};
  CHECK(expand_curie("dcat:Dataset", prefixes) == "http://www.w3.org/ns/dcat#Dataset");
  CHECK_FALSE(expand_curie("http://example.org/a", prefixes).has_value());
  CHECK_FALSE(expand_curie("nope:thing", prefixes).has_value());
  CHECK(expand_if_curie("nope:thing", prefixes) == "nope:thing");
  CHECK(expand_curie("obo:CHMO_0000595", builtin_prefixes()) == "http://purl.obolibrary.org/obo/CHMO_0000595");
}

TEST_CASE("OBO CURIEs map to PURLs") {
  CHECK(obo_purl("CHEBI:23367") == "http://purl.obolibrary.org/obo/CHEBI_23367");
  CHECK(obo_purl("RXNO:0000425") == "http://purl.obolibrary.org/obo/RXNO_0000425");
  CHECK(obo_purl("SIO:001378") == "http://purl.obolibrary.org/obo/SIO_001378");
}

TEST_CASE("compaction picks the longest namespace") {
  const PrefixMap prefixes = {{"obo", "http://purl.obolibrary.org/obo/"}, {"ex", "http://purl.obolibrary.org/"}};
  CHECK(compact_iri("http://purl.obolibrary.org/obo/RO_0004008", prefixes) == "obo:RO_0004008");
  CHECK_FALSE(compact_iri("https://unknown.example/x", prefixes).has_value());
}

TEST_CASE("absolute IRI syntax") {
  CHECK(is_absolute_iri("http://purl.obolibrary.org/obo/CHMO_0000595"));
  CHECK(is_absolute_iri("urn:uuid:1234"));
  CHECK_FALSE(is_absolute_iri("relative/path"));
  CHECK_FALSE(is_absolute_iri("http://example.org/a b"));
  CHECK_FALSE(is_absolute_iri(""));
}
