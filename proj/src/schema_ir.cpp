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

#include "apkit/schema_ir.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "apkit/error.hpp"
#include "apkit/profile_extend.hpp"

namespace apkit {

namespace {

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorCode::kInvalidIr, message); }

template <typename T>
bool contains(const std::vector<T>& values, const T& value) {
  return std::find(values.begin(), values.end(), value) != values.end();
}

void collect_effective(const SchemaIR& ir, const ClassDef& cls, std::vector<ResolvedSlot>& out,
                       std::vector<std::string>& stack) {
  if (contains(stack, cls.name)) {
    throw Error(ErrorCode::kCycle, "is-a cycle through class '" + cls.name + "'");
  }
  stack.push_back(cls.name);
  std::set<std::string> seen;
  for (const auto& slot_name : cls.own_slots) {
    const auto* slot = ir.find_slot(slot_name);
    if (slot == nullptr) {
      invalid("class '" + cls.name + "' references unknown slot '" + slot_name + "'");
    }
    if (seen.insert(slot_name).second) {
      out.push_back({slot_name, *slot});
    }
  }
  auto inherit = [&](const std::string& ancestor_name) {
    const auto* ancestor = ir.find_class(ancestor_name);
    if (ancestor == nullptr) {
      throw Error(ErrorCode::kUnknownClass, "class '" + cls.name + "' inherits from unknown '" + ancestor_name + "'");
    }
    std::vector<ResolvedSlot> inherited;
    collect_effective(ir, *ancestor, inherited, stack);
    for (auto& entry : inherited) {
      if (seen.insert(entry.name).second) {
        out.push_back(std::move(entry));
      }
    }
  };
  for (const auto& parent : cls.parents) {
    inherit(parent);
  }
  for (const auto& mixin : cls.mixins) {
    inherit(mixin);
  }
  for (auto& entry : out) {
    const auto usage = cls.slot_usage.find(entry.name);
    if (usage == cls.slot_usage.end()) {
      continue;
    }
    if (usage->second.min_cardinality) {
      entry.def.min_cardinality = *usage->second.min_cardinality;
    }
    if (usage->second.max_cardinality) {
      entry.def.max_cardinality = *usage->second.max_cardinality;
    }
    if (usage->second.range) {
      entry.def.range = *usage->second.range;
    }
  }
  stack.pop_back();
}

const ClassDef& require_class(const SchemaIR& ir, std::string_view name) {
  const auto* cls = ir.find_class(name);
  if (cls == nullptr) {
    throw Error(ErrorCode::kUnknownClass, "no class named '" + std::string(name) + "'");
  }
  return *cls;
}

void check_range(const SchemaIR& ir, const RangeSpec& range, const std::string& where) {
  if (range.members.empty()) {
    invalid(where + ": empty range");
  }
  switch (range.kind) {
    case RangeKind::kClass:
      if (range.members.size() != 1 || ir.find_class(range.members[0]) == nullptr) {
        invalid(where + ": range class '" + range.members[0] + "' does not resolve");
      }
      break;
    case RangeKind::kDatatype:
      if (range.members.size() != 1 || !ir.find_datatype(range.members[0])) {
        invalid(where + ": range datatype '" + range.members[0] + "' does not resolve");
      }
      break;
    case RangeKind::kUnion:
      if (range.members.size() < 2) {
        invalid(where + ": union range needs at least two members");
      }
      for (const auto& member : range.members) {
        if (ir.find_class(member) == nullptr) {
          if (ir.find_datatype(member)) {
            throw Error(ErrorCode::kDatatypeUnion, where + ": union ranges over datatypes are not supported ('" +
                                                       member + "')");
          }
          invalid(where + ": union member '" + member + "' does not resolve");
        }
      }
      break;
  }
}

void check_class_graph(const SchemaIR& ir) {
  enum class Mark { kNone, kActive, kDone };
  std::map<std::string, Mark> marks;
  std::function<void(const ClassDef&)> visit = [&](const ClassDef& cls) {
    auto& mark = marks[cls.name];
    if (mark == Mark::kDone) {
      return;
    }
    if (mark == Mark::kActive) {
      throw Error(ErrorCode::kCycle, "is-a cycle through class '" + cls.name + "'");
    }
    mark = Mark::kActive;
    for (const auto& parent : cls.parents) {
      visit(*ir.find_class(parent));
    }
    for (const auto& mixin : cls.mixins) {
      visit(*ir.find_class(mixin));
    }
    marks[cls.name] = Mark::kDone;
  };
  for (const auto& [name, cls] : ir.classes) {
    visit(cls);
  }
}

void check_super_slots(const SchemaIR& ir) {
  for (const auto& [name, slot] : ir.slots) {
    std::set<std::string> chain{name};
    const SlotDef* current = &slot;
    while (current->super_slot) {
      const auto* super = ir.find_slot(*current->super_slot);
      if (super == nullptr) {
        invalid("slot '" + current->name + "' has unknown super_slot '" + *current->super_slot + "'");
      }
      if (!chain.insert(super->name).second) {
        throw Error(ErrorCode::kCycle, "super_slot cycle through slot '" + name + "'");
      }
      current = super;
    }
    if (slot.super_slot) {
      const auto& super = *ir.find_slot(*slot.super_slot);
      if (!range_narrows(ir, super.range, slot.range)) {
        invalid("slot '" + name + "' range does not narrow the range of its super_slot '" + super.name + "'");
      }
    }
  }
}

nlohmann::json cardinality_json(std::uint32_t value) {
  if (value == kUnbounded) {
    return "*";
  }
  return value;
}

std::uint32_t cardinality_from_json(const nlohmann::json& value) {
  if (value.is_string() && value.get<std::string>() == "*") {
    return kUnbounded;
  }
  return value.get<std::uint32_t>();
}

nlohmann::json usage_json(const SlotUsage& usage) {
  nlohmann::json out = nlohmann::json::object();
  if (usage.min_cardinality) out["min"] = *usage.min_cardinality;
  if (usage.max_cardinality) out["max"] = cardinality_json(*usage.max_cardinality);
  if (usage.range) out["range"] = to_json(*usage.range);
  return out;
}

SlotUsage usage_from_json(const nlohmann::json& doc) {
  SlotUsage usage;
  if (doc.contains("min")) usage.min_cardinality = doc.at("min").get<std::uint32_t>();
  if (doc.contains("max")) usage.max_cardinality = cardinality_from_json(doc.at("max"));
  if (doc.contains("range")) usage.range = range_from_json(doc.at("range"));
  return usage;
}

template <typename T>
std::vector<T> string_list(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) {
    return {};
  }
  return doc.at(key).get<std::vector<T>>();
}

std::optional<std::string> optional_string(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) {
    return std::nullopt;
  }
  return doc.at(key).get<std::string>();
}

}  // namespace

const ClassDef* SchemaIR::find_class(std::string_view name) const {
  const auto it = classes.find(std::string(name));
  return it == classes.end() ? nullptr : &it->second;
}

const SlotDef* SchemaIR::find_slot(std::string_view name) const {
  const auto it = slots.find(std::string(name));
  return it == slots.end() ? nullptr : &it->second;
}

std::optional<DatatypeDef> SchemaIR::find_datatype(std::string_view name) const {
  if (const auto it = datatypes.find(std::string(name)); it != datatypes.end()) {
    return it->second;
  }
  if (const auto* builtin = builtin_datatype(name)) {
    return *builtin;
  }
  return std::nullopt;
}

const std::vector<DatatypeDef>& builtin_datatypes() {
  static const std::vector<DatatypeDef> kBuiltins = [] {
    std::vector<DatatypeDef> out;
    for (const char* local : {"string", "date", "dateTime", "decimal", "integer", "boolean", "anyURI", "duration"}) {
      const auto uri = std::string(ns::kXsd) + local;
      out.push_back({local, uri, *default_rule_for_xsd(uri)});
    }
    return out;
  }();
  return kBuiltins;
}

const DatatypeDef* builtin_datatype(std::string_view name) {
  for (const auto& dt : builtin_datatypes()) {
    if (dt.name == name) {
      return &dt;
    }
  }
  return nullptr;
}

void check_invariants(const SchemaIR& ir) {
  if (ir.id.empty()) {
    invalid("profile id is empty");
  }
  {
    std::set<std::string> ids{ir.id};
    for (const auto& id : ir.lineage) {
      if (!ids.insert(id).second) {
        throw Error(ErrorCode::kCycle, "layer_of chain revisits profile '" + id + "'");
      }
    }
    if (ir.layer_of.has_value() != !ir.lineage.empty() || (ir.layer_of && *ir.layer_of != ir.lineage.back())) {
      invalid("layer_of must name the last entry of the lineage");
    }
  }
  for (const auto& [name, cls] : ir.classes) {
    if (name != cls.name || name.empty()) {
      invalid("class key '" + name + "' does not match its name");
    }
    if (ir.slots.contains(name) || ir.datatypes.contains(name) || builtin_datatype(name) != nullptr) {
      invalid("name '" + name + "' is used by more than one kind of element");
    }
  }
  for (const auto& [name, slot] : ir.slots) {
    if (name != slot.name || name.empty()) {
      invalid("slot key '" + name + "' does not match its name");
    }
    if (ir.datatypes.contains(name) || builtin_datatype(name) != nullptr) {
      invalid("name '" + name + "' is used by more than one kind of element");
    }
  }
  for (const auto& [name, dt] : ir.datatypes) {
    if (name != dt.name || name.empty()) {
      invalid("datatype key '" + name + "' does not match its name");
    }
    if (!default_rule_for_xsd(dt.base_uri)) {
      invalid("datatype '" + name + "' has unsupported base '" + dt.base_uri + "'");
    }
    if (const auto* builtin = builtin_datatype(name); builtin != nullptr && builtin->base_uri != dt.base_uri) {
      invalid("datatype '" + name + "' redefines a built-in with a different base");
    }
  }
  for (const auto& [name, cls] : ir.classes) {
    if (!is_absolute_iri(cls.class_uri)) {
      invalid("class '" + name + "' has a non-absolute class_uri '" + cls.class_uri + "'");
    }
    for (const auto& parent : cls.parents) {
      const auto* p = ir.find_class(parent);
      if (p == nullptr) invalid("class '" + name + "' has unknown parent '" + parent + "'");
      if (p->is_mixin) invalid("class '" + name + "' uses mixin '" + parent + "' as a parent");
    }
    for (const auto& mixin : cls.mixins) {
      const auto* m = ir.find_class(mixin);
      if (m == nullptr) invalid("class '" + name + "' has unknown mixin '" + mixin + "'");
      if (!m->is_mixin) invalid("class '" + name + "' uses non-mixin '" + mixin + "' as a mixin");
    }
    std::set<std::string> own;
    for (const auto& slot : cls.own_slots) {
      if (ir.find_slot(slot) == nullptr) invalid("class '" + name + "' references unknown slot '" + slot + "'");
      if (!own.insert(slot).second) invalid("class '" + name + "' lists slot '" + slot + "' twice");
    }
  }
  check_class_graph(ir);
  for (const auto& [name, slot] : ir.slots) {
    if (!is_absolute_iri(slot.slot_uri)) {
      invalid("slot '" + name + "' has a non-absolute slot_uri '" + slot.slot_uri + "'");
    }
    check_range(ir, slot.range, "slot '" + name + "'");
    if (slot.max_cardinality == 0 || slot.min_cardinality > slot.max_cardinality) {
      invalid("slot '" + name + "' has invalid cardinality " + cardinality_string(slot.min_cardinality, slot.max_cardinality));
    }
  }
  check_super_slots(ir);
  for (const auto& [name, cls] : ir.classes) {
    if (cls.slot_usage.empty()) {
      continue;
    }
    ClassDef without_usage = cls;
    without_usage.slot_usage.clear();
    std::vector<ResolvedSlot> plain;
    std::vector<std::string> stack;
    collect_effective(ir, without_usage, plain, stack);
    for (const auto& [slot_name, usage] : cls.slot_usage) {
      const auto it = std::find_if(plain.begin(), plain.end(), [&](const ResolvedSlot& r) { return r.name == slot_name; });
      const auto where = "class '" + name + "' slot_usage '" + slot_name + "'";
      if (it == plain.end()) {
        invalid(where + " refers to a slot the class does not have");
      }
      if (usage.range) {
        check_range(ir, *usage.range, where);
        const bool inherited = !contains(cls.own_slots, slot_name);
        if (inherited && !range_narrows(ir, it->def.range, *usage.range)) {
          invalid(where + " widens the inherited range");
        }
      }
      const auto min = usage.min_cardinality.value_or(it->def.min_cardinality);
      const auto max = usage.max_cardinality.value_or(it->def.max_cardinality);
      if (max == 0 || min > max) {
        invalid(where + " has invalid cardinality " + cardinality_string(min, max));
      }
    }
  }
}

std::vector<ResolvedSlot> effective_slots(const SchemaIR& ir, std::string_view class_name) {
  std::vector<ResolvedSlot> out;
  std::vector<std::string> stack;
  collect_effective(ir, require_class(ir, class_name), out, stack);
  return out;
}

std::optional<SlotDef> effective_slot(const SchemaIR& ir, std::string_view class_name, std::string_view slot_name) {
  for (auto& entry : effective_slots(ir, class_name)) {
    if (entry.name == slot_name) {
      return std::move(entry.def);
    }
  }
  return std::nullopt;
}

bool subsumes(const SchemaIR& ir, std::string_view ancestor, std::string_view descendant) {
  require_class(ir, ancestor);
  require_class(ir, descendant);
  std::set<std::string> visited;
  std::deque<std::string> queue{std::string(descendant)};
  while (!queue.empty()) {
    auto current = std::move(queue.front());
    queue.pop_front();
    if (current == ancestor) {
      return true;
    }
    if (!visited.insert(current).second) {
      continue;
    }
    const auto& cls = require_class(ir, current);
    queue.insert(queue.end(), cls.parents.begin(), cls.parents.end());
    queue.insert(queue.end(), cls.mixins.begin(), cls.mixins.end());
  }
  return false;
}

bool range_narrows(const SchemaIR& ir, const RangeSpec& wide, const RangeSpec& narrow) {
  if (wide.kind == RangeKind::kDatatype || narrow.kind == RangeKind::kDatatype) {
    return wide == narrow;
  }
  for (const auto& member : narrow.members) {
    const bool covered = std::any_of(wide.members.begin(), wide.members.end(), [&](const std::string& w) {
      return ir.find_class(w) != nullptr && ir.find_class(member) != nullptr && subsumes(ir, w, member);
    });
    if (!covered) {
      return false;
    }
  }
  return true;
}

std::vector<std::string> parent_ancestors(const SchemaIR& ir, std::string_view class_name) {
  std::vector<std::string> out;
  std::deque<std::string> queue;
  for (const auto& p : require_class(ir, class_name).parents) queue.push_back(p);
  while (!queue.empty()) {
    auto current = std::move(queue.front());
    queue.pop_front();
    if (contains(out, current)) {
      continue;
    }
    out.push_back(current);
    for (const auto& p : require_class(ir, current).parents) queue.push_back(p);
  }
  return out;
}

std::vector<std::string> concrete_descendants(const SchemaIR& ir, std::string_view class_name) {
  require_class(ir, class_name);
  std::vector<std::string> out;
  for (const auto& [name, cls] : ir.classes) {
    if (!cls.is_mixin && !cls.is_abstract && subsumes(ir, class_name, name)) {
      out.push_back(name);
    }
  }
  if (const auto it = std::find(out.begin(), out.end(), class_name); it != out.end() && it != out.begin()) {
    std::rotate(out.begin(), it, it + 1);
  }
  return out;
}

nlohmann::json to_json(const RangeSpec& range) {
  const char* kind = range.kind == RangeKind::kClass ? "CLASS" : range.kind == RangeKind::kDatatype ? "DATATYPE" : "UNION";
  return {{"kind", kind}, {"members", range.members}};
}

RangeSpec range_from_json(const nlohmann::json& doc) {
  RangeSpec range;
  const auto kind = doc.at("kind").get<std::string>();
  if (kind == "CLASS") {
    range.kind = RangeKind::kClass;
  } else if (kind == "DATATYPE") {
    range.kind = RangeKind::kDatatype;
  } else if (kind == "UNION") {
    range.kind = RangeKind::kUnion;
  } else {
    invalid("unknown range kind '" + kind + "'");
  }
  range.members = doc.at("members").get<std::vector<std::string>>();
  return range;
}

nlohmann::json to_json(const ClassDef& cls) {
  nlohmann::json out = {{"class_uri", cls.class_uri},   {"parents", cls.parents},     {"mixins", cls.mixins},
                        {"slots", cls.own_slots},       {"is_mixin", cls.is_mixin},   {"is_abstract", cls.is_abstract}};
  if (cls.description) out["description"] = *cls.description;
  if (!cls.slot_usage.empty()) {
    auto usage = nlohmann::json::object();
    for (const auto& [slot, u] : cls.slot_usage) usage[slot] = usage_json(u);
    out["slot_usage"] = std::move(usage);
  }
  return out;
}

ClassDef class_from_json(const std::string& name, const nlohmann::json& doc) {
  ClassDef cls;
  cls.name = name;
  cls.class_uri = doc.at("class_uri").get<std::string>();
  cls.description = optional_string(doc, "description");
  cls.parents = string_list<std::string>(doc, "parents");
  cls.mixins = string_list<std::string>(doc, "mixins");
  cls.own_slots = string_list<std::string>(doc, "slots");
  cls.is_mixin = doc.value("is_mixin", false);
  cls.is_abstract = doc.value("is_abstract", false);
  if (doc.contains("slot_usage")) {
    for (const auto& [slot, u] : doc.at("slot_usage").items()) cls.slot_usage[slot] = usage_from_json(u);
  }
  return cls;
}

nlohmann::json to_json(const SlotDef& slot) {
  nlohmann::json out = {{"slot_uri", slot.slot_uri},
                        {"range", to_json(slot.range)},
                        {"min", slot.min_cardinality},
                        {"max", cardinality_json(slot.max_cardinality)}};
  if (slot.super_slot) out["super_slot"] = *slot.super_slot;
  if (slot.description) out["description"] = *slot.description;
  if (slot.annotation) out["annotation"] = *slot.annotation;
  return out;
}

SlotDef slot_from_json(const std::string& name, const nlohmann::json& doc) {
  SlotDef slot;
  slot.name = name;
  slot.slot_uri = doc.at("slot_uri").get<std::string>();
  slot.range = range_from_json(doc.at("range"));
  slot.min_cardinality = doc.contains("min") ? doc.at("min").get<std::uint32_t>() : 0;
  slot.max_cardinality = doc.contains("max") ? cardinality_from_json(doc.at("max")) : kUnbounded;
  slot.super_slot = optional_string(doc, "super_slot");
  slot.description = optional_string(doc, "description");
  slot.annotation = optional_string(doc, "annotation");
  return slot;
}

nlohmann::json to_json(const SchemaIR& ir) {
  nlohmann::json out = {{"id", ir.id}, {"version", ir.version}, {"prefixes", ir.prefix_map}, {"lineage", ir.lineage}};
  auto classes = nlohmann::json::object();
  for (const auto& [name, cls] : ir.classes) classes[name] = to_json(cls);
  auto slots = nlohmann::json::object();
  for (const auto& [name, slot] : ir.slots) slots[name] = to_json(slot);
  auto datatypes = nlohmann::json::object();
  for (const auto& [name, dt] : ir.datatypes) {
    datatypes[name] = {{"base_uri", dt.base_uri}, {"lexical_rule", std::string(to_string(dt.lexical_check))}};
  }
  out["classes"] = std::move(classes);
  out["slots"] = std::move(slots);
  out["datatypes"] = std::move(datatypes);
  if (ir.layer_of) out["layer_of"] = *ir.layer_of;
  return out;
}

SchemaIR ir_from_json(const nlohmann::json& doc) {
  SchemaIR ir;
  try {
    ir.id = doc.at("id").get<std::string>();
    ir.version = doc.value("version", "");
    if (doc.contains("prefixes")) ir.prefix_map = doc.at("prefixes").get<PrefixMap>();
    ir.lineage = string_list<std::string>(doc, "lineage");
    ir.layer_of = optional_string(doc, "layer_of");
    if (doc.contains("classes")) {
      for (const auto& [name, c] : doc.at("classes").items()) ir.classes.emplace(name, class_from_json(name, c));
    }
    if (doc.contains("slots")) {
      for (const auto& [name, s] : doc.at("slots").items()) ir.slots.emplace(name, slot_from_json(name, s));
    }
    if (doc.contains("datatypes")) {
      for (const auto& [name, d] : doc.at("datatypes").items()) {
        ir.datatypes.emplace(name, DatatypeDef{name, d.at("base_uri").get<std::string>(),
                                               lexical_rule_from_string(d.at("lexical_rule").get<std::string>())});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    invalid(std::string("profile document: ") + e.what());
  }
  return ir;
}

std::string canonical_string(const SchemaIR& ir) { return to_json(ir).dump(2) + "\n"; }

SchemaIR load_profile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot read profile '" + path.string() + "'");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedJson, path.string() + ": " + e.what());
  }
  auto ir = ir_from_json(doc);
  check_invariants(ir);
  return ir;
}

void save_profile(const SchemaIR& ir, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write profile '" + path.string() + "'");
  }
  out << canonical_string(ir);
}

std::string cardinality_string(std::uint32_t min, std::uint32_t max) {
  return std::to_string(min) + ".." + (max == kUnbounded ? std::string("*") : std::to_string(max));
}

namespace detail {

SchemaIR apply_layer(const SchemaIR& base, const ExtensionLayer& layer, bool with_overrides) {
  if (layer.layer_of != base.id) {
    throw Error(ErrorCode::kLayerMismatch,
                "layer '" + layer.id + "' extends '" + layer.layer_of + "', not '" + base.id + "'");
  }
  SchemaIR out = base;
  out.id = layer.id;
  out.version = layer.version;
  out.layer_of = base.id;
  out.lineage.push_back(base.id);

  for (const auto& [prefix, iri] : layer.prefix_map) {
    const auto [it, inserted] = out.prefix_map.emplace(prefix, iri);
    if (!inserted && it->second != iri) {
      throw Error(ErrorCode::kNameCollision, "prefix '" + prefix + "' is bound to a different namespace");
    }
  }

  auto name_in_use = [&](const std::string& name) {
    return out.classes.contains(name) || out.slots.contains(name) || out.datatypes.contains(name);
  };

  for (const auto& dt : layer.new_datatypes) {
    if (const auto it = out.datatypes.find(dt.name); it != out.datatypes.end()) {
      if (it->second == dt) continue;
      throw Error(ErrorCode::kNameCollision, "datatype '" + dt.name + "' is redefined with different content");
    }
    if (name_in_use(dt.name)) {
      throw Error(ErrorCode::kNameCollision, "datatype name '" + dt.name + "' is already used");
    }
    out.datatypes.emplace(dt.name, dt);
  }

  // Compatible re-declarations keep the base definition.
  std::map<std::string, SlotDef> redeclared;
  for (const auto& slot : layer.new_slots) {
    if (const auto it = out.slots.find(slot.name); it != out.slots.end()) {
      const auto& existing = it->second;
      if (existing.slot_uri == slot.slot_uri && existing.range == slot.range && existing.super_slot == slot.super_slot) {
        if (!(existing == slot)) redeclared.emplace(slot.name, slot);
        continue;
      }
      throw Error(ErrorCode::kNameCollision, "slot '" + slot.name + "' is redefined with incompatible content");
    }
    if (name_in_use(slot.name)) {
      throw Error(ErrorCode::kNameCollision, "slot name '" + slot.name + "' is already used");
    }
    out.slots.emplace(slot.name, slot);
  }

  auto apply_redeclared_cardinality = [&](ClassDef& cls, const std::string& slot_name) {
    const auto it = redeclared.find(slot_name);
    if (it == redeclared.end() || cls.slot_usage.contains(slot_name)) return;
    const auto& kept = out.slots.at(slot_name);
    SlotUsage usage;
    if (it->second.min_cardinality != kept.min_cardinality) usage.min_cardinality = it->second.min_cardinality;
    if (it->second.max_cardinality != kept.max_cardinality) usage.max_cardinality = it->second.max_cardinality;
    if (!usage.empty()) cls.slot_usage.emplace(slot_name, usage);
  };

  for (const auto& cls : layer.new_classes) {
    if (const auto it = out.classes.find(cls.name); it != out.classes.end()) {
      if (it->second == cls) continue;
      throw Error(ErrorCode::kNameCollision, "class '" + cls.name + "' is redefined with different content");
    }
    if (name_in_use(cls.name)) {
      throw Error(ErrorCode::kNameCollision, "class name '" + cls.name + "' is already used");
    }
    auto added = cls;
    for (const auto& slot_name : cls.own_slots) apply_redeclared_cardinality(added, slot_name);
    out.classes.emplace(cls.name, std::move(added));
  }

  for (const auto& attachment : layer.mixin_attachments) {
    const auto it = out.classes.find(attachment.class_name);
    if (it == out.classes.end()) {
      throw Error(ErrorCode::kUnknownClass, "mixin attachment targets unknown class '" + attachment.class_name + "'");
    }
    if (!contains(it->second.mixins, attachment.mixin_name)) it->second.mixins.push_back(attachment.mixin_name);
  }

  for (const auto& attachment : layer.slot_attachments) {
    const auto it = out.classes.find(attachment.class_name);
    if (it == out.classes.end()) {
      throw Error(ErrorCode::kUnknownClass, "slot attachment targets unknown class '" + attachment.class_name + "'");
    }
    if (!out.slots.contains(attachment.slot_name)) {
      invalid("slot attachment references unknown slot '" + attachment.slot_name + "'");
    }
    auto& cls = it->second;
    if (contains(cls.own_slots, attachment.slot_name)) continue;
    cls.own_slots.push_back(attachment.slot_name);
    apply_redeclared_cardinality(cls, attachment.slot_name);
  }

  if (with_overrides) {
    for (const auto& override : layer.cardinality_overrides) {
      const auto it = out.classes.find(override.class_name);
      if (it == out.classes.end()) {
        throw Error(ErrorCode::kUnknownClass, "override targets unknown class '" + override.class_name + "'");
      }
      auto& usage = it->second.slot_usage[override.slot_name];
      if (override.usage.min_cardinality) usage.min_cardinality = override.usage.min_cardinality;
      if (override.usage.max_cardinality) usage.max_cardinality = override.usage.max_cardinality;
      if (override.usage.range) usage.range = override.usage.range;
    }
  }
  return out;
}

}  // namespace detail

SchemaIR merge_layers(const SchemaIR& base, const ExtensionLayer& extension) {
  const auto findings = lint_extension(base, extension);
  if (!findings.empty()) {
    throw Error(ErrorCode::kInadmissibleExtension,
                "layer '" + extension.id + "' violates extension rules:\n" + findings.to_text());
  }
  auto merged = detail::apply_layer(base, extension, /*with_overrides=*/true);
  check_invariants(merged);
  return merged;
}

SchemaIR merge_layers(const SchemaIR& base, const SchemaIR& extension) {
  if (extension.layer_of != base.id) {
    throw Error(ErrorCode::kLayerMismatch, "profile '" + extension.id + "' is not a layer of '" + base.id + "'");
  }
  ExtensionLayer layer;
  layer.id = extension.id;
  layer.version = extension.version;
  layer.layer_of = base.id;
  layer.prefix_map = extension.prefix_map;
  for (const auto& [name, dt] : extension.datatypes) {
    if (!base.datatypes.contains(name) || !(base.datatypes.at(name) == dt)) layer.new_datatypes.push_back(dt);
  }
  for (const auto& [name, slot] : extension.slots) {
    if (!base.slots.contains(name) || !(base.slots.at(name) == slot)) layer.new_slots.push_back(slot);
  }
  for (const auto& [name, cls] : extension.classes) {
    const auto* existing = base.find_class(name);
    if (existing == nullptr || existing->class_uri != cls.class_uri || existing->parents != cls.parents ||
        existing->is_mixin != cls.is_mixin || existing->is_abstract != cls.is_abstract) {
      layer.new_classes.push_back(cls);
      continue;
    }
    for (const auto& slot : cls.own_slots) {
      if (!contains(existing->own_slots, slot)) layer.slot_attachments.push_back({name, slot});
    }
    for (const auto& mixin : cls.mixins) {
      if (!contains(existing->mixins, mixin)) layer.mixin_attachments.push_back({name, mixin});
    }
    for (const auto& [slot, usage] : cls.slot_usage) {
      const auto it = existing->slot_usage.find(slot);
      if (it == existing->slot_usage.end() || !(it->second == usage)) {
        layer.cardinality_overrides.push_back({name, slot, usage});
      }
    }
  }
  return merge_layers(base, layer);
}

}  // namespace apkit
