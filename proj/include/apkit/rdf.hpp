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

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "apkit/instance.hpp"
#include "apkit/iri.hpp"
#include "apkit/schema_ir.hpp"

namespace apkit {

struct Term {
  enum class Kind { kIri, kBlank, kLiteral };
  Kind kind = Kind::kIri;
  /// IRI, blank label (without `_:`) or lexical form.
  std::string value;
  /// Literal datatype IRI; empty for simple (xsd:string) literals.
  std::string datatype;
  std::string language;

  static Term iri(std::string value) { return {Kind::kIri, std::move(value), "", ""}; }
  static Term blank(std::string label) { return {Kind::kBlank, std::move(label), "", ""}; }
  static Term literal(std::string value, std::string datatype = "") {
    return {Kind::kLiteral, std::move(value), std::move(datatype), ""};
  }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Insertion-ordered triples without duplicates.
class TripleSet {
 public:
  bool add(Triple triple);
  bool contains(const Triple& triple) const { return index_.contains(triple); }
  const std::vector<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  std::set<Triple> as_set() const { return index_; }

  std::optional<std::string> base_iri;

 private:
  std::vector<Triple> triples_;
  std::set<Triple> index_;
};

/// Validates first (NOT_CONFORMANT on failure), then emits one rdf:type triple per map node and
/// one triple per slot value. Blank nodes are `_:b<N>` in pre-order.
TripleSet to_triples(const InstanceDocument& doc, const SchemaIR& ir);

enum class RdfFormat { kNTriples, kTurtle };

std::string to_ntriples(const TripleSet& ts);
std::string to_turtle(const TripleSet& ts, const PrefixMap& prefixes);
std::string serialize(const TripleSet& ts, RdfFormat format, const PrefixMap& prefixes = {});
/// One N-Triples term as written in a statement.
std::string ntriples_term(const Term& term);

/// Throws MALFORMED_RDF.
TripleSet parse_ntriples(std::string_view text);

/// Adds the super-slot predicate chain for every triple whose predicate is a sub-slot's slot_uri.
TripleSet materialize_super_properties(const TripleSet& ts, const SchemaIR& ir);

}  // namespace apkit
