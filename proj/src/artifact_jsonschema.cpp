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

#include <algorithm>
#include <deque>
#include <set>

#include "apkit/artifact.hpp"
#include "apkit/error.hpp"

namespace apkit {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::string_view kIriPattern = R"(^[A-Za-z][A-Za-z0-9+.\-]*:[^\s<>"{}|\\^`]+$)";

ojson datatype_schema(const DatatypeDef& dt) {
  switch (dt.lexical_check) {
    case LexicalRule::kString:
      return {{"type", "string"}};
    case LexicalRule::kDate:
      return {{"type", "string"}, {"format", "date"}, {"pattern", R"(^-?[0-9]{4,}-[0-9]{2}-[0-9]{2}$)"}};
    case LexicalRule::kDateTime:
      return {{"type", "string"},
              {"format", "date-time"},
              {"pattern", R"(^-?[0-9]{4,}-[0-9]{2}-[0-9]{2}T[0-9]{2}:[0-9]{2}:[0-9]{2}(\.[0-9]+)?(Z|[+-][0-9]{2}:[0-9]{2})?$)"}};
    case LexicalRule::kDuration:
      return {{"type", "string"},
              {"pattern", R"(^-?P(?=.)([0-9]+Y)?([0-9]+M)?([0-9]+D)?(T(?=.)([0-9]+H)?([0-9]+M)?([0-9]+(\.[0-9]+)?S)?)?$)"}};
    case LexicalRule::kDecimal:
      return {{"type", ojson::array({"number", "string"})}, {"pattern", R"(^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$)"}};
    case LexicalRule::kInteger:
      return {{"type", ojson::array({"integer", "string"})}, {"pattern", R"(^[+-]?[0-9]+$)"}};
    case LexicalRule::kBoolean:
      return {{"anyOf", ojson::array({ojson{{"type", "boolean"}}, ojson{{"enum", ojson::array({0, 1})}},
                                      ojson{{"type", "string"}, {"pattern", "^(true|false|1|0)$"}}})}};
    case LexicalRule::kAnyUri:
      return {{"type", "string"}, {"pattern", std::string(kIriPattern)}};
    case LexicalRule::kInchiKey:
    case LexicalRule::kSmilesNonempty:
      return {{"type", "string"}, {"pattern", std::string(*string_refinement_pattern(dt.lexical_check))}};
  }
  return {{"type", "string"}};
}

class SchemaBuilder {
 public:
  explicit SchemaBuilder(const SchemaIR& ir) : ir_(ir) {}

  ojson class_value(const RangeSpec& range) {
    ojson alternatives = ojson::array();
    std::set<std::string> seen;
    for (const auto& member : range.members) {
      for (const auto& concrete : concrete_descendants(ir_, member)) {
        if (!seen.insert(concrete).second) continue;
        enqueue(concrete);
        const ojson ref = {{"$ref", "#/$defs/" + concrete}};
        if (concrete == member) {
          alternatives.push_back(ref);
        } else {
          alternatives.push_back({{"allOf", ojson::array({ref})}, {"required", ojson::array({"@type"})}});
        }
      }
    }
    alternatives.push_back({{"type", "string"}, {"pattern", std::string(kIriPattern)}});
    if (alternatives.size() == 1) return alternatives.front();
    return {{"anyOf", std::move(alternatives)}};
  }

  ojson slot_schema(const SlotDef& def) {
    ojson item = def.range.is_class_valued() ? class_value(def.range)
                                              : datatype_schema(*ir_.find_datatype(def.range.members.front()));
    ojson array = {{"type", "array"}, {"items", item}, {"minItems", def.min_cardinality}};
    if (def.max_cardinality != kUnbounded) array["maxItems"] = def.max_cardinality;
    ojson out;
    if (def.min_cardinality <= 1) {
      out["anyOf"] = ojson::array({std::move(item), std::move(array)});
    } else {
      out = std::move(array);
    }
    if (const auto& description = ir_.slots.at(def.name).description) out["description"] = *description;
    return out;
  }

  ojson definition(const std::string& name) {
    const auto& cls = ir_.classes.at(name);
    ojson def = {{"type", "object"}, {"title", name}};
    if (cls.description) def["description"] = *cls.description;
    ojson properties = ojson::object();
    ojson required = ojson::array();
    for (const auto& [slot_name, slot] : effective_slots(ir_, name)) {
      properties[slot_name] = slot_schema(slot);
      if (slot.min_cardinality >= 1) required.push_back(slot_name);
    }
    def["properties"] = std::move(properties);
    def["patternProperties"] = {{"^@id$", {{"type", "string"}}}, {"^@type$", {{"const", name}}}};
    if (!required.empty()) def["required"] = std::move(required);
    def["additionalProperties"] = false;
    return def;
  }

  ojson build(const std::string& root) {
    ojson schema = {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                    {"$id", "urn:apkit:" + ir_.id + ":" + root},
                    {"title", ir_.id + " " + root}};
    ojson root_alternatives = ojson::array();
    for (const auto& concrete : concrete_descendants(ir_, root)) {
      enqueue(concrete);
      const ojson ref = {{"$ref", "#/$defs/" + concrete}};
      root_alternatives.push_back(concrete == root ? ref
                                                   : ojson{{"allOf", ojson::array({ref})}, {"required", ojson::array({"@type"})}});
    }
    std::map<std::string, ojson> defs;
    while (!queue_.empty()) {
      const auto name = queue_.front();
      queue_.pop_front();
      defs.emplace(name, definition(name));
    }
    if (root_alternatives.empty()) {
      schema["not"] = ojson::object();
    } else if (root_alternatives.size() == 1 && root_alternatives.front().contains("$ref")) {
      schema["$ref"] = root_alternatives.front().at("$ref");
    } else {
      schema["anyOf"] = std::move(root_alternatives);
    }
    ojson defs_json = ojson::object();
    for (auto& [name, def] : defs) defs_json[name] = std::move(def);
    schema["$defs"] = std::move(defs_json);
    return schema;
  }

 private:
  void enqueue(const std::string& name) {
    if (queued_.insert(name).second) queue_.push_back(name);
  }

  const SchemaIR& ir_;
  std::set<std::string> queued_;
  std::deque<std::string> queue_;
};

}  // namespace

ojson gen_jsonschema(const SchemaIR& ir, const std::string& root_class) {
  if (ir.find_class(root_class) == nullptr) {
    throw Error(ErrorCode::kUnknownRootClass, "profile '" + ir.id + "' has no class '" + root_class + "'");
  }
  return SchemaBuilder(ir).build(root_class);
}

ojson gen_context(const SchemaIR& ir) {
  ojson context = ojson::object();
  for (const auto& [prefix, iri] : ir.prefix_map) context[prefix] = iri;
  auto compact = [&](const std::string& iri) { return compact_iri(iri, ir.prefix_map).value_or(iri); };
  for (const auto& [name, cls] : ir.classes) context[name] = compact(cls.class_uri);
  for (const auto& [name, slot] : ir.slots) {
    ojson term = {{"@id", compact(slot.slot_uri)}};
    if (slot.range.is_class_valued()) {
      term["@type"] = "@id";
    } else {
      const auto dt = *ir.find_datatype(slot.range.members.front());
      if (dt.lexical_check == LexicalRule::kAnyUri) {
        term["@type"] = "@id";
      } else if (dt.base_uri != std::string(ns::kXsd) + "string") {
        term["@type"] = compact(dt.base_uri);
      }
    }
    context[name] = std::move(term);
  }
  return {{"@context", std::move(context)}};
}

}  // namespace apkit
