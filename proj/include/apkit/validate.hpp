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
#include <string>
#include <string_view>

#include "apkit/instance.hpp"
#include "apkit/report.hpp"
#include "apkit/schema_ir.hpp"

namespace apkit {

/// Checks a document against `doc.root_class`. Findings follow document order; paths are
/// slash-separated from the root ("/"). Throws UNKNOWN_ROOT_CLASS.
ValidationReport validate(const InstanceDocument& doc, const SchemaIR& ir);

/// Resolves an `@type` value (class name, class IRI or CURIE) to a class name.
std::optional<std::string> resolve_type_name(const SchemaIR& ir, std::string_view value);

/// Class a map node is read as when it sits under `range` (its `@type` when valid,
/// else the first union member it conforms to).
std::string implied_class(const SchemaIR& ir, const Node& node, const RangeSpec& range);

/// Rewrites extension-only slots to their nearest base super-slot (dropping those without one)
/// and extension-only `@type` values to their nearest base ancestor. Throws NOT_AN_EXTENSION.
InstanceDocument project_to_base(const InstanceDocument& doc, const SchemaIR& ext_ir, const SchemaIR& base_ir);

}  // namespace apkit
