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

#include <set>

#include "apkit/artifact.hpp"
#include "apkit/error.hpp"

namespace apkit {

namespace {

void replace_all(std::string& text, std::string_view from, std::string_view to) {
  for (auto pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size())) {
    text.replace(pos, from.size(), to);
  }
}

std::string trimmed_base(std::string base) {
  while (!base.empty() && (base.back() == '/' || base.back() == '#')) base.pop_back();
  return base;
}

void check_policy(const ShapeIriPolicy& policy) {
  if (!is_absolute_iri(policy.base)) {
    throw Error(ErrorCode::kInvalidPolicy, "shape base '" + policy.base + "' is not an absolute IRI");
  }
  if (policy.node_template.find("{ClassName}") == std::string::npos) {
    throw Error(ErrorCode::kInvalidPolicy, "node template must contain {ClassName}");
  }
  if (policy.property_template.find("{ClassName}") == std::string::npos ||
      policy.property_template.find("{slot_name}") == std::string::npos) {
    throw Error(ErrorCode::kInvalidPolicy, "property template must contain {ClassName} and {slot_name}");
  }
}

}  // namespace

ShapeIriPolicy ShapeIriPolicy::fragment(std::string base) {
  return {ShapeIriMode::kFragment, trimmed_base(std::move(base)), "{base}#{ClassName}Shape", "{base}#{ClassName}-{slot_name}"};
}

ShapeIriPolicy ShapeIriPolicy::path(std::string base) {
  return {ShapeIriMode::kPath, trimmed_base(std::move(base)), "{base}/{ClassName}Shape", "{base}/{ClassName}/{slot_name}"};
}

std::string ShapeIriPolicy::node_iri(std::string_view class_name) const {
  auto out = node_template;
  replace_all(out, "{base}", base);
  replace_all(out, "{ClassName}", class_name);
  return out;
}

std::string ShapeIriPolicy::property_iri(std::string_view class_name, std::string_view slot_name) const {
  auto out = property_template;
  replace_all(out, "{base}", base);
  replace_all(out, "{ClassName}", class_name);
  replace_all(out, "{slot_name}", slot_name);
  return out;
}

ShapeGraph shapes_from_ir(const SchemaIR& ir, const ShapeIriPolicy& policy) {
  check_policy(policy);
  ShapeGraph graph;
  graph.prefix_map = ir.prefix_map;
  std::set<std::string> used;
  auto claim = [&](std::string iri) {
    if (!is_absolute_iri(iri)) {
      throw Error(ErrorCode::kInvalidPolicy, "policy produced a non-absolute shape IRI '" + iri + "'");
    }
    if (!used.insert(iri).second) {
      throw Error(ErrorCode::kPolicyCollision, "two shapes would share the IRI <" + iri + ">");
    }
    return iri;
  };

  for (const auto& [name, dt] : ir.datatypes) {
    NodeShape shape;
    shape.id = claim(policy.node_iri(name));
    shape.name = name;
    shape.target_class = dt.base_uri;
    if (default_rule_for_xsd(dt.base_uri) != dt.lexical_check) {
      if (auto pattern = string_refinement_pattern(dt.lexical_check)) shape.pattern = std::string(*pattern);
    }
    graph.node_shapes.push_back(std::move(shape));
  }

  for (const auto& [name, cls] : ir.classes) {
    NodeShape shape;
    shape.id = claim(policy.node_iri(name));
    shape.name = name;
    shape.target_class = cls.class_uri;
    shape.description = cls.description;
    for (const auto& [slot_name, def] : effective_slots(ir, name)) {
      PropertyShape ps;
      ps.id = claim(policy.property_iri(name, slot_name));
      ps.path = def.slot_uri;
      ps.name = slot_name;
      ps.description = ir.slots.at(slot_name).description;
      if (def.min_cardinality > 0) ps.min_count = def.min_cardinality;
      if (def.max_cardinality != kUnbounded) ps.max_count = def.max_cardinality;
      switch (def.range.kind) {
        case RangeKind::kClass: {
          const auto& target = def.range.members.front();
          ps.class_constraints = {ir.classes.at(target).class_uri};
          ps.node_refs = {policy.node_iri(target)};
          break;
        }
        case RangeKind::kUnion:
          for (const auto& member : def.range.members) {
            ConstraintGroup group;
            group.class_constraints = {ir.classes.at(member).class_uri};
            group.node_refs = {policy.node_iri(member)};
            ps.or_branches.push_back(std::move(group));
          }
          break;
        case RangeKind::kDatatype: {
          const auto& dt_name = def.range.members.front();
          const auto dt = *ir.find_datatype(dt_name);
          ps.datatype_constraints = {dt.base_uri};
          if (ir.datatypes.contains(dt_name)) {
            ps.node_refs = {policy.node_iri(dt_name)};
            if (default_rule_for_xsd(dt.base_uri) != dt.lexical_check) {
              if (auto pattern = string_refinement_pattern(dt.lexical_check)) ps.pattern = std::string(*pattern);
            }
          }
          break;
        }
      }
      shape.property_shapes.push_back(std::move(ps));
    }
    graph.node_shapes.push_back(std::move(shape));
  }
  return graph;
}

std::string gen_shacl(const SchemaIR& ir, const ShapeIriPolicy& policy, ShaclSyntax syntax) {
  const auto graph = shapes_from_ir(ir, policy);
  return syntax == ShaclSyntax::kTurtle ? serialize_turtle(graph) : serialize_jsonld(graph);
}

nlohmann::ordered_json content_view(const SchemaIR& ir) {
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (const auto& [name, cls] : ir.classes) {
    nlohmann::ordered_json slots = nlohmann::ordered_json::object();
    for (const auto& [slot_name, def] : effective_slots(ir, name)) {
      nlohmann::ordered_json entry = {{"slot_uri", def.slot_uri},
                                      {"range", to_json(def.range)},
                                      {"min", def.min_cardinality},
                                      {"max", cardinality_string(def.min_cardinality, def.max_cardinality)}};
      if (const auto& description = ir.slots.at(slot_name).description) entry["description"] = *description;
      slots[slot_name] = std::move(entry);
    }
    nlohmann::ordered_json entry = {{"class_uri", cls.class_uri}, {"slots", std::move(slots)}};
    if (cls.description) entry["description"] = *cls.description;
    classes[name] = std::move(entry);
  }
  nlohmann::ordered_json datatypes = nlohmann::ordered_json::object();
  for (const auto& [name, dt] : ir.datatypes) {
    datatypes[name] = {{"base_uri", dt.base_uri}, {"lexical_rule", std::string(to_string(dt.lexical_check))}};
  }
  return {{"classes", std::move(classes)}, {"datatypes", std::move(datatypes)}};
}

}  // namespace apkit
