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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace apkit {

using PrefixMap = std::map<std::string, std::string>;

namespace ns {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kSh = "http://www.w3.org/ns/shacl#";
inline constexpr std::string_view kDcat = "http://www.w3.org/ns/dcat#";
inline constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";
inline constexpr std::string_view kFoaf = "http://xmlns.com/foaf/0.1/";
inline constexpr std::string_view kProv = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view kObo = "http://purl.obolibrary.org/obo/";
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
}  // namespace ns

/// Absolute IRI check: `scheme ":" rest`, no whitespace or characters excluded by RFC 3987.
bool is_absolute_iri(std::string_view iri);

/// Substring after the last '#' or '/'.
std::string local_name(std::string_view iri);

/// Prefix table bundled with the tool; document contexts take precedence over it.
const PrefixMap& builtin_prefixes();

/// Expands `prefix:local` when `prefix` is in `prefixes`. Absolute IRIs that are not CURIEs
/// (e.g. `http://...`) return nullopt.
std::optional<std::string> expand_curie(std::string_view value, const PrefixMap& prefixes);

/// Expands a CURIE when possible, otherwise returns the input unchanged.
std::string expand_if_curie(std::string_view value, const PrefixMap& prefixes);

/// Longest-namespace compaction for Turtle/JSON-LD output. Returns nullopt when no
/// namespace matches or the local part is not a safe prefixed-name local part.
std::optional<std::string> compact_iri(std::string_view iri, const PrefixMap& prefixes);

/// `CHEBI:23367` -> `http://purl.obolibrary.org/obo/CHEBI_23367`.
std::string obo_purl(std::string_view curie);

bool is_identifier(std::string_view name);

/// Hands out unique element names. The same IRI always gets the same name; distinct IRIs
/// sharing a local name get `_2`, `_3`, ... in first-seen order.
class NameRegistry {
 public:
  std::string name_for_iri(const std::string& iri);
  /// Claims `preferred` if free, otherwise the first free `preferred_N`.
  std::string claim(const std::string& preferred);
  bool taken(const std::string& name) const { return used_.contains(name); }

 private:
  std::map<std::string, std::string> by_iri_;
  std::set<std::string> used_;
};

}  // namespace apkit
