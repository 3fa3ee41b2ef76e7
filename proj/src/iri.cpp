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

#include "apkit/iri.hpp"

#include <cctype>

namespace apkit {

bool is_absolute_iri(std::string_view iri) {
  const auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == iri.size()) {
    return false;
  }
  if (!std::isalpha(static_cast<unsigned char>(iri[0]))) {
    return false;
  }
  for (std::size_t i = 1; i < colon; ++i) {
    const char c = iri[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
      return false;
    }
  }
  for (std::size_t i = colon + 1; i < iri.size(); ++i) {
    const auto c = static_cast<unsigned char>(iri[i]);
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
        c == '\\' || c == '^' || c == '`') {
      return false;
    }
  }
  return true;
}

std::string local_name(std::string_view iri) {
  const auto pos = iri.find_last_of("#/");
  if (pos == std::string_view::npos) {
    const auto colon = iri.find(':');
    return std::string(colon == std::string_view::npos ? iri : iri.substr(colon + 1));
  }
  return std::string(iri.substr(pos + 1));
}

const PrefixMap& builtin_prefixes() {
  static const PrefixMap kPrefixes = {
      {"adms", "http://www.w3.org/ns/adms#"},
      {"dcat", std::string(ns::kDcat)},
      {"dcatap", "http://data.europa.eu/r5r/"},
      {"dcterms", std::string(ns::kDcterms)},
      {"dct", std::string(ns::kDcterms)},
      {"foaf", std::string(ns::kFoaf)},
      {"locn", "http://www.w3.org/ns/locn#"},
      {"obo", std::string(ns::kObo)},
      {"owl", "http://www.w3.org/2002/07/owl#"},
      {"prov", std::string(ns::kProv)},
      {"qudt", "http://qudt.org/schema/qudt/"},
      {"rdf", std::string(ns::kRdf)},
      {"rdfs", std::string(ns::kRdfs)},
      {"sh", std::string(ns::kSh)},
      {"skos", "http://www.w3.org/2004/02/skos/core#"},
      {"vcard", "http://www.w3.org/2006/vcard/ns#"},
      {"xsd", std::string(ns::kXsd)},
  };
  return kPrefixes;
}

std::optional<std::string> expand_curie(std::string_view value, const PrefixMap& prefixes) {
  const auto colon = value.find(':');
  if (colon == std::string_view::npos) {
    return std::nullopt;
  }
  const auto rest = value.substr(colon + 1);
  if (rest.starts_with("//")) {
    return std::nullopt;
  }
  const auto it = prefixes.find(std::string(value.substr(0, colon)));
  if (it == prefixes.end()) {
    return std::nullopt;
  }
  return it->second + std::string(rest);
}

std::string expand_if_curie(std::string_view value, const PrefixMap& prefixes) {
  if (auto expanded = expand_curie(value, prefixes)) {
    return *expanded;
  }
  return std::string(value);
}

namespace {

bool safe_local_part(std::string_view local) {
  if (local.empty()) {
    return true;
  }
  if (local.front() == '-' || local.front() == '.' || local.back() == '.') {
    return false;
  }
  for (const char c : local) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') {
      return false;
    }
  }
  return true;
}

}  // namespace

std::optional<std::string> compact_iri(std::string_view iri, const PrefixMap& prefixes) {
  const std::pair<const std::string, std::string>* best = nullptr;
  for (const auto& entry : prefixes) {
    if (!entry.second.empty() && iri.starts_with(entry.second) &&
        (best == nullptr || entry.second.size() > best->second.size() ||
         (entry.second.size() == best->second.size() && entry.first.size() > best->first.size()))) {
      best = &entry;
    }
  }
  if (best == nullptr) {
    return std::nullopt;
  }
  const auto local = iri.substr(best->second.size());
  if (!safe_local_part(local)) {
    return std::nullopt;
  }
  return best->first + ":" + std::string(local);
}

std::string obo_purl(std::string_view curie) {
  std::string out(ns::kObo);
  for (const char c : curie) {
    out.push_back(c == ':' ? '_' : c);
  }
  return out;
}

bool is_identifier(std::string_view name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
    return false;
  }
  for (const char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
      return false;
    }
  }
  return true;
}

std::string NameRegistry::name_for_iri(const std::string& iri) {
  if (const auto it = by_iri_.find(iri); it != by_iri_.end()) {
    return it->second;
  }
  auto name = claim(local_name(iri));
  by_iri_.emplace(iri, name);
  return name;
}

std::string NameRegistry::claim(const std::string& preferred) {
  if (used_.insert(preferred).second) {
    return preferred;
  }
  for (int n = 2;; ++n) {
    auto candidate = preferred + "_" + std::to_string(n);
    if (used_.insert(candidate).second) {
      return candidate;
    }
  }
}

}  // namespace apkit
