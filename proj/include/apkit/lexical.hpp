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

#include <optional>
#include <string_view>

namespace apkit {

/// Registry of lexical-space checks applied to scalar instance values.
enum class LexicalRule {
  kString,
  kDate,
  kDateTime,
  kDuration,
  kDecimal,
  kInteger,
  kBoolean,
  kAnyUri,
  kInchiKey,
  kSmilesNonempty,
};

std::string_view to_string(LexicalRule rule);
/// Throws Error(UNKNOWN_RULE) for unregistered ids.
LexicalRule lexical_rule_from_string(std::string_view id);

bool lexical_check(LexicalRule rule, std::string_view value);
bool lexical_check(std::string_view rule_id, std::string_view value);

/// Default rule for a supported XSD datatype IRI; nullopt when unsupported.
std::optional<LexicalRule> default_rule_for_xsd(std::string_view datatype_iri);

/// ECMAScript regex carried as sh:pattern / JSON Schema pattern for rules that refine
/// xsd:string. Only rules without a dedicated XSD datatype have one.
std::optional<std::string_view> string_refinement_pattern(LexicalRule rule);
std::optional<LexicalRule> rule_for_pattern(std::string_view pattern);

}  // namespace apkit
