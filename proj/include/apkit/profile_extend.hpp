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
#include <string>

#include <nlohmann/json.hpp>

#include "apkit/report.hpp"
#include "apkit/schema_ir.hpp"

namespace apkit {

struct BuiltinLayerCatalog {
  ExtensionLayer dcat_ap_plus;
  ExtensionLayer chem_dcat_ap;
};

/// Parsed once from the embedded `.layer.json` resources.
const BuiltinLayerCatalog& builtin_layers();
/// Raw embedded text of a builtin layer ("plus" or "chem").
std::string builtin_layer_text(std::string_view which);

nlohmann::json to_json(const ExtensionLayer& layer);
ExtensionLayer layer_from_json(const nlohmann::json& doc);
ExtensionLayer load_layer(const std::filesystem::path& path);

/// DUPLICATE_SEMANTICS, BROADENED_CARDINALITY and MANDATORY_DROPPED findings. Throws LAYER_MISMATCH.
ValidationReport lint_extension(const SchemaIR& base, const ExtensionLayer& ext);

/// Builtin layer ("plus" or "chem") rebased onto `base`. Throws MISSING_ENTRY_POINT,
/// MISSING_BASE_LAYER, ALREADY_EXTENDED.
ExtensionLayer builtin_layer_for(std::string_view which, const SchemaIR& base);

/// Layers DCAT-AP+ over a base whose prov:Activity class is the entry point.
SchemaIR inject_provenance_layer(const SchemaIR& base);
/// Layers ChemDCAT-AP over an IR that already carries DCAT-AP+.
SchemaIR apply_chem_layer(const SchemaIR& plus);

}  // namespace apkit
