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

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "apkit/iri.hpp"

namespace apkit::jsonld {

/// Active context for the JSON-LD subset: prefixes, term definitions, `@vocab`, `@base`.
class Context {
 public:
  struct Term {
    std::string iri;
    bool coerce_iri = false;
    bool list_container = false;
  };

  /// Applies a local context. Remote (string) contexts are resolved through `resolve_remote`;
  /// an unresolved remote context throws MISSING_CONTEXT.
  void apply(const nlohmann::ordered_json& ctx, const std::function<std::optional<nlohmann::ordered_json>(const std::string&)>& resolve_remote,
             std::vector<std::string>& warnings);

  /// Expanded property IRI for a key, or nullopt when the key is undefined and should be dropped.
  std::optional<std::string> expand_key(std::string_view key) const;
  /// Expands a value in IRI position. Throws MISSING_CONTEXT for unresolvable compact IRIs.
  std::string expand_iri(std::string_view value, bool vocab_relative) const;
  const Term* term(std::string_view key) const;

  const PrefixMap& prefixes() const { return prefixes_; }

 private:
  PrefixMap prefixes_;
  std::map<std::string, Term> terms_;
  std::optional<std::string> vocab_;
  std::optional<std::string> base_;
};

struct Object;

/// One expanded value: an IRI reference, a literal, a nested node object or an ordered list.
struct Value {
  enum class Kind { kIri, kLiteral, kObject, kList };
  Kind kind = Kind::kLiteral;
  std::string text;
  /// For string literals: the value read as an IRI, when it expands.
  std::optional<std::string> as_iri;
  std::optional<std::string> language;
  nlohmann::ordered_json literal;
  std::shared_ptr<Object> object;
  std::vector<Value> list;
};

struct Object {
  std::optional<std::string> id;
  std::vector<std::string> types;
  std::vector<std::pair<std::string, std::vector<Value>>> properties;

  const std::vector<Value>* get(std::string_view iri) const;
};

struct Document {
  PrefixMap prefixes;
  std::vector<std::shared_ptr<Object>> nodes;
  std::vector<std::string> warnings;
};

struct ReadOptions {
  /// Replacement for remote `@context` references (either a context object or a document with `@context`).
  std::optional<nlohmann::ordered_json> context_override;
};

/// Reads a document into expanded top-level node objects. Throws MALFORMED_JSON, MISSING_CONTEXT.
Document read(std::string_view text, const ReadOptions& options = {});

}  // namespace apkit::jsonld
