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

#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "apkit/schema_ir.hpp"
#include "apkit/shacl.hpp"

namespace apkit {

enum class ShapeIriMode { kFragment, kPath };

/// Naming scheme for generated shapes. Templates may use `{base}`, `{ClassName}` and `{slot_name}`.
struct ShapeIriPolicy {
  ShapeIriMode mode = ShapeIriMode::kFragment;
  std::string base;
  std::string node_template;
  std::string property_template;

  /// `{base}#{ClassName}Shape` and `{base}#{ClassName}-{slot_name}`.
  static ShapeIriPolicy fragment(std::string base);
  /// `{base}/{ClassName}Shape` and `{base}/{ClassName}/{slot_name}`.
  static ShapeIriPolicy path(std::string base);

  std::string node_iri(std::string_view class_name) const;
  std::string property_iri(std::string_view class_name, std::string_view slot_name) const;
};

enum class ShaclSyntax { kTurtle, kJsonLd };

/// Shapes for every class (flattened effective slots) and every declared datatype.
/// Throws INVALID_POLICY, POLICY_COLLISION.
ShapeGraph shapes_from_ir(const SchemaIR& ir, const ShapeIriPolicy& policy);
std::string gen_shacl(const SchemaIR& ir, const ShapeIriPolicy& policy, ShaclSyntax syntax = ShaclSyntax::kTurtle);

/// Class, effective-slot and datatype content that survives a SHACL round trip.
nlohmann::ordered_json content_view(const SchemaIR& ir);

/// Draft 2020-12 schema rooted at `root_class`. Throws UNKNOWN_ROOT_CLASS.
nlohmann::ordered_json gen_jsonschema(const SchemaIR& ir, const std::string& root_class);
/// JSON-LD context mapping class and slot names to their IRIs.
nlohmann::ordered_json gen_context(const SchemaIR& ir);

/// Markdown pages keyed by file name: one per class, `index.md`, and `layers.md` for layered profiles.
std::map<std::string, std::string> gen_docs(const SchemaIR& ir);
void write_files(const std::map<std::string, std::string>& files, const std::filesystem::path& dir);

}  // namespace apkit
