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
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "apkit/iri.hpp"
#include "apkit/lexical.hpp"

namespace apkit {

/// Upper cardinality bound meaning "no limit". Compares greater than any finite bound.
inline constexpr std::uint32_t kUnbounded = std::numeric_limits<std::uint32_t>::max();

enum class RangeKind { kClass, kDatatype, kUnion };

struct RangeSpec {
  RangeKind kind = RangeKind::kDatatype;
  std::vector<std::string> members;

  static RangeSpec of_class(std::string name) { return {RangeKind::kClass, {std::move(name)}}; }
  static RangeSpec of_datatype(std::string name) { return {RangeKind::kDatatype, {std::move(name)}}; }
  static RangeSpec of_union(std::vector<std::string> names) { return {RangeKind::kUnion, std::move(names)}; }

  bool is_class_valued() const { return kind != RangeKind::kDatatype; }

  friend bool operator==(const RangeSpec&, const RangeSpec&) = default;
};

/// Class-local refinement of a slot (own or inherited).
struct SlotUsage {
  std::optional<std::uint32_t> min_cardinality;
  std::optional<std::uint32_t> max_cardinality;
  std::optional<RangeSpec> range;

  bool empty() const { return !min_cardinality && !max_cardinality && !range; }
  friend bool operator==(const SlotUsage&, const SlotUsage&) = default;
};

struct ClassDef {
  std::string name;
  std::string class_uri;
  std::optional<std::string> description;
  std::vector<std::string> parents;
  std::vector<std::string> mixins;
  std::vector<std::string> own_slots;
  bool is_mixin = false;
  bool is_abstract = false;
  std::map<std::string, SlotUsage> slot_usage;

  friend bool operator==(const ClassDef&, const ClassDef&) = default;
};

struct SlotDef {
  std::string name;
  std::string slot_uri;
  RangeSpec range;
  std::uint32_t min_cardinality = 0;
  std::uint32_t max_cardinality = kUnbounded;
  std::optional<std::string> super_slot;
  std::optional<std::string> description;
  /// Ontology term describing the slot's values (e.g. a CHEMINF class).
  std::optional<std::string> annotation;

  bool multivalued() const { return max_cardinality > 1; }
  friend bool operator==(const SlotDef&, const SlotDef&) = default;
};

struct DatatypeDef {
  std::string name;
  std::string base_uri;
  LexicalRule lexical_check = LexicalRule::kString;

  friend bool operator==(const DatatypeDef&, const DatatypeDef&) = default;
};

struct SchemaIR {
  std::string id;
  std::string version;
  PrefixMap prefix_map;
  std::map<std::string, ClassDef> classes;
  std::map<std::string, SlotDef> slots;
  std::map<std::string, DatatypeDef> datatypes;
  std::optional<std::string> layer_of;
  /// Profile ids this IR was layered on, root first; `layer_of` is the last entry.
  std::vector<std::string> lineage;

  const ClassDef* find_class(std::string_view name) const;
  const SlotDef* find_slot(std::string_view name) const;
  /// User datatype first, then the built-in XSD datatypes.
  std::optional<DatatypeDef> find_datatype(std::string_view name) const;

  friend bool operator==(const SchemaIR&, const SchemaIR&) = default;
};

/// Built-in datatypes: string, date, dateTime, decimal, integer, boolean, anyURI, duration.
const std::vector<DatatypeDef>& builtin_datatypes();
const DatatypeDef* builtin_datatype(std::string_view name);

/// Additions a layer makes on top of a base profile. Also the in-memory form of `.layer.json`.
struct ExtensionLayer {
  struct SlotAttachment {
    std::string class_name;
    std::string slot_name;
  };
  struct MixinAttachment {
    std::string class_name;
    std::string mixin_name;
  };
  struct Override {
    std::string class_name;
    std::string slot_name;
    SlotUsage usage;
  };

  std::string id;
  std::string version;
  std::string layer_of;
  PrefixMap prefix_map;
  std::vector<ClassDef> new_classes;
  std::vector<SlotDef> new_slots;
  std::vector<DatatypeDef> new_datatypes;
  std::vector<SlotAttachment> slot_attachments;
  std::vector<MixinAttachment> mixin_attachments;
  std::vector<Override> cardinality_overrides;
};

struct ResolvedSlot {
  std::string name;
  SlotDef def;
};

/// Throws Error (INVALID_IR, CYCLE, DATATYPE_UNION) on the first violated invariant.
void check_invariants(const SchemaIR& ir);

/// Own slots in declaration order, then slots inherited from parents and mixins in
/// declaration order, with class-local usage applied (nearest class wins).
std::vector<ResolvedSlot> effective_slots(const SchemaIR& ir, std::string_view class_name);
std::optional<SlotDef> effective_slot(const SchemaIR& ir, std::string_view class_name, std::string_view slot_name);

/// Reflexive-transitive closure over parents and mixins.
bool subsumes(const SchemaIR& ir, std::string_view ancestor, std::string_view descendant);

/// True when every member of `narrow` is covered by a member of `wide` (class subsumption)
/// or both are the same datatype.
bool range_narrows(const SchemaIR& ir, const RangeSpec& wide, const RangeSpec& narrow);

/// Ancestors over parents only, nearest first (breadth-first, declaration order).
std::vector<std::string> parent_ancestors(const SchemaIR& ir, std::string_view class_name);

/// Concrete classes subsumed by `class_name` (including itself), excluding mixins and abstract classes.
std::vector<std::string> concrete_descendants(const SchemaIR& ir, std::string_view class_name);

/// Layer an extension over `base`. Throws LAYER_MISMATCH, NAME_COLLISION, CYCLE or
/// INADMISSIBLE_EXTENSION. `base` is never modified.
SchemaIR merge_layers(const SchemaIR& base, const ExtensionLayer& extension);
/// Same, with the extension given as an IR whose `layer_of` names `base`.
SchemaIR merge_layers(const SchemaIR& base, const SchemaIR& extension);

nlohmann::json to_json(const SchemaIR& ir);
SchemaIR ir_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const RangeSpec& range);
RangeSpec range_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ClassDef& cls);
ClassDef class_from_json(const std::string& name, const nlohmann::json& doc);
nlohmann::json to_json(const SlotDef& slot);
SlotDef slot_from_json(const std::string& name, const nlohmann::json& doc);

/// Sorted-key, two-space indented JSON with a trailing LF.
std::string canonical_string(const SchemaIR& ir);
SchemaIR load_profile(const std::filesystem::path& path);
void save_profile(const SchemaIR& ir, const std::filesystem::path& path);

std::string cardinality_string(std::uint32_t min, std::uint32_t max);

namespace detail {
/// Applies a layer without lint or invariant checks. Cardinality overrides are skipped
/// unless `with_overrides` is set.
SchemaIR apply_layer(const SchemaIR& base, const ExtensionLayer& layer, bool with_overrides);
}  // namespace detail

}  // namespace apkit
