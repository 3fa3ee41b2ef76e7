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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "apkit/iri.hpp"
#include "apkit/report.hpp"
#include "apkit/schema_ir.hpp"

namespace apkit {

/// One alternative of an `sh:or` list.
struct ConstraintGroup {
  std::vector<std::string> class_constraints;
  std::vector<std::string> datatype_constraints;
  std::vector<std::string> node_refs;
  std::optional<std::string> pattern;

  friend bool operator==(const ConstraintGroup&, const ConstraintGroup&) = default;
};

struct PropertyShape {
  std::string id;
  std::string path;
  std::optional<std::string> name;
  std::optional<std::uint32_t> min_count;
  std::optional<std::uint32_t> max_count;
  std::vector<std::string> class_constraints;
  std::vector<std::string> datatype_constraints;
  std::vector<std::string> node_refs;
  std::vector<ConstraintGroup> or_branches;
  std::optional<std::string> pattern;
  std::optional<std::string> node_kind;
  std::optional<std::string> description;

  friend bool operator==(const PropertyShape&, const PropertyShape&) = default;
};

struct NodeShape {
  std::string id;
  std::optional<std::string> target_class;
  std::optional<std::string> name;
  std::optional<std::string> pattern;
  std::vector<PropertyShape> property_shapes;
  std::optional<std::string> description;

  friend bool operator==(const NodeShape&, const NodeShape&) = default;
};

struct ShapeGraph {
  PrefixMap prefix_map;
  std::vector<NodeShape> node_shapes;
  std::vector<std::string> parse_warnings;
};

struct ParseOptions {
  /// Local stand-in for a remote `@context`.
  std::optional<nlohmann::ordered_json> context_override;
};

/// Reads the JSON-LD subset used by SHACL application profiles. Throws MALFORMED_JSON, MISSING_CONTEXT.
ShapeGraph parse_jsonld(std::string_view document, const ParseOptions& options = {});

struct CompileResult {
  SchemaIR ir;
  ValidationReport report;
};

/// Node shapes become classes or datatypes, property shapes become slots. Diagnostics
/// (NO_TARGET, UNRESOLVED_RANGE, ...) are collected in the report.
CompileResult compile(const ShapeGraph& shapes, const std::string& profile_id, const std::string& version = "");

/// Writes the graph back as JSON-LD (nested property shapes, compact IRIs).
std::string serialize_jsonld(const ShapeGraph& shapes);
/// Writes the graph as Turtle.
std::string serialize_turtle(const ShapeGraph& shapes);

}  // namespace apkit
