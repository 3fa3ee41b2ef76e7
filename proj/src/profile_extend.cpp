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

#include "apkit/profile_extend.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "apkit/error.hpp"

namespace apkit {

namespace resources {
extern const std::string_view kPlusLayerJson;
extern const std::string_view kChemLayerJson;
}  // namespace resources

namespace {

std::string expand_term(const std::string& value, const PrefixMap& prefixes, const std::string& where) {
  if (auto iri = expand_curie(value, prefixes)) {
    return *iri;
  }
  if (is_absolute_iri(value)) {
    return value;
  }
  throw Error(ErrorCode::kMissingContext, where + ": cannot expand '" + value + "'");
}

PrefixMap expansion_prefixes(const PrefixMap& layer_prefixes) {
  PrefixMap out = builtin_prefixes();
  for (const auto& [prefix, iri] : layer_prefixes) out[prefix] = iri;
  return out;
}

void expand_class(ClassDef& cls, const PrefixMap& prefixes) {
  cls.class_uri = expand_term(cls.class_uri, prefixes, "class '" + cls.name + "'");
}

void expand_slot(SlotDef& slot, const PrefixMap& prefixes) {
  slot.slot_uri = expand_term(slot.slot_uri, prefixes, "slot '" + slot.name + "'");
  if (slot.annotation) slot.annotation = expand_term(*slot.annotation, prefixes, "slot '" + slot.name + "'");
}

SlotUsage usage_of(const nlohmann::json& doc) {
  SlotUsage usage;
  if (doc.contains("min")) usage.min_cardinality = doc.at("min").get<std::uint32_t>();
  if (doc.contains("max")) {
    const auto& max = doc.at("max");
    usage.max_cardinality = max.is_string() && max.get<std::string>() == "*" ? kUnbounded : max.get<std::uint32_t>();
  }
  if (doc.contains("range")) usage.range = range_from_json(doc.at("range"));
  return usage;
}

ExtensionLayer parse_embedded(std::string_view text) {
  return layer_from_json(nlohmann::json::parse(text.begin(), text.end()));
}

void rename_class_refs(ExtensionLayer& layer, const std::string& from, const std::string& to) {
  auto rename = [&](std::string& name) {
    if (name == from) name = to;
  };
  auto rename_range = [&](RangeSpec& range) {
    if (range.is_class_valued()) std::for_each(range.members.begin(), range.members.end(), rename);
  };
  for (auto& cls : layer.new_classes) {
    std::for_each(cls.parents.begin(), cls.parents.end(), rename);
    std::for_each(cls.mixins.begin(), cls.mixins.end(), rename);
    for (auto& [slot, usage] : cls.slot_usage) {
      if (usage.range) rename_range(*usage.range);
    }
  }
  for (auto& slot : layer.new_slots) rename_range(slot.range);
  for (auto& attachment : layer.slot_attachments) rename(attachment.class_name);
  for (auto& attachment : layer.mixin_attachments) rename(attachment.class_name);
  for (auto& override : layer.cardinality_overrides) {
    rename(override.class_name);
    if (override.usage.range) rename_range(*override.usage.range);
  }
}

void reject_if_applied(const SchemaIR& base, const ExtensionLayer& layer) {
  for (const auto& cls : layer.new_classes) {
    if (base.find_class(cls.name) != nullptr) {
      throw Error(ErrorCode::kAlreadyExtended,
                  "profile '" + base.id + "' already contains class '" + cls.name + "' from layer '" + layer.id + "'");
    }
  }
}

const ClassDef* class_with_uri(const SchemaIR& ir, std::string_view uri) {
  for (const auto& [name, cls] : ir.classes) {
    if (cls.class_uri == uri && !cls.is_mixin) return &cls;
  }
  return nullptr;
}

}  // namespace

const BuiltinLayerCatalog& builtin_layers() {
  static const BuiltinLayerCatalog kCatalog{parse_embedded(resources::kPlusLayerJson),
                                            parse_embedded(resources::kChemLayerJson)};
  return kCatalog;
}

std::string builtin_layer_text(std::string_view which) {
  if (which == "plus") return std::string(resources::kPlusLayerJson);
  if (which == "chem") return std::string(resources::kChemLayerJson);
  throw Error(ErrorCode::kIo, "no builtin layer named '" + std::string(which) + "'");
}

nlohmann::json to_json(const ExtensionLayer& layer) {
  nlohmann::json out = {{"id", layer.id}, {"version", layer.version}, {"layer_of", layer.layer_of},
                        {"prefixes", layer.prefix_map}};
  auto classes = nlohmann::json::object();
  for (const auto& cls : layer.new_classes) classes[cls.name] = to_json(cls);
  auto slots = nlohmann::json::object();
  for (const auto& slot : layer.new_slots) slots[slot.name] = to_json(slot);
  auto datatypes = nlohmann::json::object();
  for (const auto& dt : layer.new_datatypes) {
    datatypes[dt.name] = {{"base_uri", dt.base_uri}, {"lexical_rule", std::string(to_string(dt.lexical_check))}};
  }
  auto attachments = nlohmann::json::array();
  for (const auto& a : layer.slot_attachments) attachments.push_back({{"class", a.class_name}, {"slot", a.slot_name}});
  auto mixins = nlohmann::json::array();
  for (const auto& a : layer.mixin_attachments) mixins.push_back({{"class", a.class_name}, {"mixin", a.mixin_name}});
  auto overrides = nlohmann::json::array();
  for (const auto& o : layer.cardinality_overrides) {
    nlohmann::json entry = {{"class", o.class_name}, {"slot", o.slot_name}};
    if (o.usage.min_cardinality) entry["min"] = *o.usage.min_cardinality;
    if (o.usage.max_cardinality) {
      entry["max"] = *o.usage.max_cardinality == kUnbounded ? nlohmann::json("*") : nlohmann::json(*o.usage.max_cardinality);
    }
    if (o.usage.range) entry["range"] = to_json(*o.usage.range);
    overrides.push_back(std::move(entry));
  }
  out["classes"] = std::move(classes);
  out["slots"] = std::move(slots);
  out["datatypes"] = std::move(datatypes);
  out["slot_attachments"] = std::move(attachments);
  out["mixin_attachments"] = std::move(mixins);
  out["overrides"] = std::move(overrides);
  return out;
}

ExtensionLayer layer_from_json(const nlohmann::json& doc) {
  ExtensionLayer layer;
  try {
    layer.id = doc.at("id").get<std::string>();
    layer.version = doc.value("version", "");
    layer.layer_of = doc.at("layer_of").get<std::string>();
    if (doc.contains("prefixes")) layer.prefix_map = doc.at("prefixes").get<PrefixMap>();
    const auto prefixes = expansion_prefixes(layer.prefix_map);
    if (doc.contains("classes")) {
      for (const auto& [name, c] : doc.at("classes").items()) {
        auto cls = class_from_json(name, c);
        expand_class(cls, prefixes);
        layer.new_classes.push_back(std::move(cls));
      }
    }
    if (doc.contains("slots")) {
      for (const auto& [name, s] : doc.at("slots").items()) {
        auto slot = slot_from_json(name, s);
        expand_slot(slot, prefixes);
        layer.new_slots.push_back(std::move(slot));
      }
    }
    if (doc.contains("datatypes")) {
      for (const auto& [name, d] : doc.at("datatypes").items()) {
        layer.new_datatypes.push_back(
            {name, expand_term(d.at("base_uri").get<std::string>(), prefixes, "datatype '" + name + "'"),
             lexical_rule_from_string(d.at("lexical_rule").get<std::string>())});
      }
    }
    for (const auto& a : doc.value("slot_attachments", nlohmann::json::array())) {
      layer.slot_attachments.push_back({a.at("class").get<std::string>(), a.at("slot").get<std::string>()});
    }
    for (const auto& a : doc.value("mixin_attachments", nlohmann::json::array())) {
      layer.mixin_attachments.push_back({a.at("class").get<std::string>(), a.at("mixin").get<std::string>()});
    }
    for (const auto& o : doc.value("overrides", nlohmann::json::array())) {
      layer.cardinality_overrides.push_back({o.at("class").get<std::string>(), o.at("slot").get<std::string>(), usage_of(o)});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidIr, std::string("layer document: ") + e.what());
  }
  return layer;
}

ExtensionLayer load_layer(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read layer '" + path.string() + "'");
  try {
    return layer_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedJson, path.string() + ": " + e.what());
  }
}

ValidationReport lint_extension(const SchemaIR& base, const ExtensionLayer& ext) {
  if (ext.layer_of != base.id) {
    throw Error(ErrorCode::kLayerMismatch, "layer '" + ext.id + "' extends '" + ext.layer_of + "', not '" + base.id + "'");
  }
  ValidationReport report;
  const auto provisional = detail::apply_layer(base, ext, /*with_overrides=*/false);

  using Conflict = std::pair<std::string, std::string>;
  std::map<std::string, std::set<Conflict>> conflicts;
  for (const auto& [name, cls] : provisional.classes) {
    const auto slots = effective_slots(provisional, name);
    for (const auto& added : slots) {
      if (base.slots.contains(added.name)) continue;
      for (const auto& existing : slots) {
        if (base.slots.contains(existing.name) && existing.def.slot_uri == added.def.slot_uri) {
          conflicts[name].insert({added.name, existing.name});
        }
      }
    }
  }
  for (const auto& [name, pairs] : conflicts) {
    const auto& cls = provisional.classes.at(name);
    for (const auto& [added, existing] : pairs) {
      const bool inherited = std::any_of(cls.parents.begin(), cls.parents.end(), [&](const std::string& p) {
                               return conflicts.contains(p) && conflicts.at(p).contains({added, existing});
                             }) ||
                             std::any_of(cls.mixins.begin(), cls.mixins.end(), [&](const std::string& m) {
                               return conflicts.contains(m) && conflicts.at(m).contains({added, existing});
                             });
      if (inherited) continue;
      report.error("DUPLICATE_SEMANTICS", name + "/" + added,
                   "slot '" + added + "' reuses slot_uri <" + provisional.slots.at(added).slot_uri +
                       "> of existing slot '" + existing + "' on class '" + name + "'");
    }
  }

  for (const auto& o : ext.cardinality_overrides) {
    if (provisional.find_class(o.class_name) == nullptr) {
      throw Error(ErrorCode::kUnknownClass, "override targets unknown class '" + o.class_name + "'");
    }
    const auto current = effective_slot(provisional, o.class_name, o.slot_name);
    if (!current) {
      throw Error(ErrorCode::kInvalidIr,
                  "override refers to slot '" + o.slot_name + "' which class '" + o.class_name + "' does not have");
    }
    if (base.find_class(o.class_name) == nullptr || !effective_slot(base, o.class_name, o.slot_name)) continue;
    const auto min = o.usage.min_cardinality.value_or(current->min_cardinality);
    const auto max = o.usage.max_cardinality.value_or(current->max_cardinality);
    const auto was = cardinality_string(current->min_cardinality, current->max_cardinality);
    const auto now = cardinality_string(min, max);
    const auto path = o.class_name + "/" + o.slot_name;
    if (current->min_cardinality >= 1 && min == 0) {
      report.error("MANDATORY_DROPPED", path, "override makes mandatory slot optional (" + was + " -> " + now + ")");
    } else if (min < current->min_cardinality) {
      report.error("BROADENED_CARDINALITY", path, "override lowers the minimum (" + was + " -> " + now + ")");
    }
    if (max > current->max_cardinality) {
      report.error("BROADENED_CARDINALITY", path, "override raises the maximum (" + was + " -> " + now + ")");
    }
  }
  return report;
}

ExtensionLayer builtin_layer_for(std::string_view which, const SchemaIR& base) {
  const auto* activity = class_with_uri(base, std::string(ns::kProv) + "Activity");
  if (which == "plus") {
    if (activity == nullptr) {
      throw Error(ErrorCode::kMissingEntryPoint, "profile '" + base.id + "' has no class with class_uri prov:Activity");
    }
    auto layer = builtin_layers().dcat_ap_plus;
    reject_if_applied(base, layer);
    if (activity->name != "Activity") rename_class_refs(layer, "Activity", activity->name);
    layer.layer_of = base.id;
    return layer;
  }
  if (which == "chem") {
    const auto* generating = base.find_class("DataGeneratingActivity");
    if (activity == nullptr || generating == nullptr || base.find_class("EvaluatedEntity") == nullptr ||
        base.find_class("EvaluatedActivity") == nullptr || !subsumes(base, activity->name, generating->name)) {
      throw Error(ErrorCode::kMissingBaseLayer, "profile '" + base.id + "' does not carry the DCAT-AP+ layer");
    }
    auto layer = builtin_layers().chem_dcat_ap;
    reject_if_applied(base, layer);
    layer.layer_of = base.id;
    return layer;
  }
  throw Error(ErrorCode::kIo, "unknown builtin layer '" + std::string(which) + "' (expected plus or chem)");
}

SchemaIR inject_provenance_layer(const SchemaIR& base) { return merge_layers(base, builtin_layer_for("plus", base)); }

SchemaIR apply_chem_layer(const SchemaIR& plus) { return merge_layers(plus, builtin_layer_for("chem", plus)); }

}  // namespace apkit
