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

#include "apkit/shacl.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "apkit/error.hpp"
#include "apkit/jsonld.hpp"

namespace apkit {

namespace {

using jsonld::Object;
using jsonld::Value;

std::string sh(std::string_view local) { return std::string(ns::kSh) + std::string(local); }
std::string xsd(std::string_view local) { return std::string(ns::kXsd) + std::string(local); }

const std::set<std::string>& ignored_shacl_keys() {
  static const std::set<std::string> kKeys = {sh("order"), sh("group"), sh("severity"), sh("message"),
                                              sh("defaultValue"), sh("name"), sh("description")};
  return kKeys;
}

struct ShapeReader {
  std::map<std::string, const Object*> index;
  std::vector<std::string>& warnings;
  std::size_t property_counter = 0;
  std::size_t node_counter = 0;

  void warn(std::string message) { warnings.push_back(std::move(message)); }

  std::optional<std::string> iri(const Value& value, const std::string& where) {
    switch (value.kind) {
      case Value::Kind::kIri:
        return value.text;
      case Value::Kind::kLiteral:
        if (value.literal.is_string()) {
          if (value.as_iri) return value.as_iri;
          throw Error(ErrorCode::kMissingContext, where + ": cannot expand '" + value.text + "'");
        }
        break;
      case Value::Kind::kObject:
        if (value.object->id) return value.object->id;
        break;
      case Value::Kind::kList:
        break;
    }
    warn(where + ": expected an IRI");
    return std::nullopt;
  }

  std::vector<std::string> iris(const std::vector<Value>& values, const std::string& where) {
    std::vector<std::string> out;
    for (const auto& value : values) {
      if (auto v = iri(value, where)) out.push_back(*v);
    }
    return out;
  }

  std::optional<std::string> text(const std::vector<Value>& values) {
    const Value* chosen = nullptr;
    for (const auto& value : values) {
      if (value.kind != Value::Kind::kLiteral) continue;
      if (chosen == nullptr || (value.language && (*value.language == "en" || value.language->starts_with("en-")) &&
                                !(chosen->language && chosen->language->starts_with("en")))) {
        chosen = &value;
      }
    }
    if (chosen == nullptr) return std::nullopt;
    return chosen->literal.is_string() ? chosen->literal.get<std::string>() : chosen->text;
  }

  std::optional<std::uint32_t> count(const std::vector<Value>& values, const std::string& where) {
    for (const auto& value : values) {
      if (value.kind != Value::Kind::kLiteral) continue;
      if (value.literal.is_number_unsigned()) return value.literal.get<std::uint32_t>();
      if (value.literal.is_number_integer() && value.literal.get<std::int64_t>() >= 0) {
        return static_cast<std::uint32_t>(value.literal.get<std::int64_t>());
      }
      if (value.literal.is_string()) {
        const auto s = value.literal.get<std::string>();
        std::uint32_t n = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec == std::errc() && ptr == s.data() + s.size()) return n;
      }
      warn(where + ": cardinality '" + value.text + "' is not a non-negative integer");
    }
    return std::nullopt;
  }

  const Object* resolve(const Value& value) {
    if (value.kind == Value::Kind::kObject) return value.object.get();
    if (value.kind == Value::Kind::kIri) {
      const auto it = index.find(value.text);
      return it == index.end() ? nullptr : it->second;
    }
    return nullptr;
  }

  void unsupported(const std::string& key, const std::string& where) {
    if (key.starts_with(ns::kSh) && !ignored_shacl_keys().contains(key)) {
      warn(where + ": unsupported constraint sh:" + key.substr(ns::kSh.size()) + " was ignored");
    }
  }

  ConstraintGroup group(const Object& obj, const std::string& where) {
    ConstraintGroup out;
    for (const auto& [key, values] : obj.properties) {
      if (key == sh("class")) {
        out.class_constraints = iris(values, where);
      } else if (key == sh("datatype")) {
        out.datatype_constraints = iris(values, where);
      } else if (key == sh("node")) {
        out.node_refs = iris(values, where);
      } else if (key == sh("pattern")) {
        out.pattern = text(values);
      } else {
        unsupported(key, where + " sh:or member");
      }
    }
    return out;
  }

  PropertyShape property(const Object& obj) {
    PropertyShape ps;
    ps.id = obj.id ? *obj.id : "_:ps" + std::to_string(property_counter++);
    const auto& where = ps.id;
    for (const auto& [key, values] : obj.properties) {
      if (key == sh("path")) {
        for (const auto& value : values) {
          if (value.kind == Value::Kind::kObject || value.kind == Value::Kind::kList) {
            warn(where + ": complex property paths are not supported");
            continue;
          }
          if (auto p = iri(value, where)) ps.path = *p;
        }
      } else if (key == sh("name")) {
        ps.name = text(values);
      } else if (key == sh("description")) {
        ps.description = text(values);
      } else if (key == sh("minCount")) {
        ps.min_count = count(values, where);
      } else if (key == sh("maxCount")) {
        ps.max_count = count(values, where);
      } else if (key == sh("class")) {
        ps.class_constraints = iris(values, where);
      } else if (key == sh("datatype")) {
        ps.datatype_constraints = iris(values, where);
      } else if (key == sh("node")) {
        ps.node_refs = iris(values, where);
      } else if (key == sh("pattern")) {
        ps.pattern = text(values);
      } else if (key == sh("nodeKind")) {
        if (!values.empty()) ps.node_kind = iri(values.front(), where);
      } else if (key == sh("or")) {
        for (const auto& value : values) {
          const auto& members = value.kind == Value::Kind::kList ? value.list : std::vector<Value>{value};
          for (const auto& member : members) {
            const auto* obj_member = resolve(member);
            if (obj_member == nullptr) {
              warn(where + ": sh:or member could not be resolved");
              continue;
            }
            ps.or_branches.push_back(group(*obj_member, where));
          }
        }
      } else {
        unsupported(key, where);
      }
    }
    return ps;
  }

  NodeShape node(const Object& obj) {
    NodeShape shape;
    shape.id = obj.id ? *obj.id : "_:ns" + std::to_string(node_counter++);
    const auto& where = shape.id;
    for (const auto& [key, values] : obj.properties) {
      if (key == sh("targetClass") || key == sh("datatype")) {
        const auto targets = iris(values, where);
        if (targets.size() > 1) warn(where + ": only the first target is used");
        if (!targets.empty() && !shape.target_class) shape.target_class = targets.front();
      } else if (key == sh("property")) {
        for (const auto& value : values) {
          const auto* target = resolve(value);
          if (target == nullptr) {
            warn(where + ": property shape <" + value.text + "> could not be resolved");
            continue;
          }
          shape.property_shapes.push_back(property(*target));
        }
      } else if (key == sh("name")) {
        shape.name = text(values);
      } else if (key == sh("description")) {
        shape.description = text(values);
      } else if (key == sh("pattern")) {
        shape.pattern = text(values);
      } else {
        unsupported(key, where);
      }
    }
    return shape;
  }
};

bool has_type(const Object& obj, const std::string& type) {
  return std::find(obj.types.begin(), obj.types.end(), type) != obj.types.end();
}

// ---------------------------------------------------------------------------------------------
// compile

bool is_date_like(const std::string& iri) {
  return iri == xsd("date") || iri == xsd("dateTime") || iri == xsd("gYear") || iri == xsd("gYearMonth");
}

std::optional<std::string> fallback_datatype(const std::string& iri) {
  static const std::map<std::string, std::string> kFallbacks = {
      {std::string(ns::kRdf) + "langString", "string"},
      {std::string(ns::kRdf) + "PlainLiteral", "string"},
      {std::string(ns::kRdfs) + "Literal", "string"},
      {std::string(ns::kRdf) + "HTML", "string"},
      {xsd("normalizedString"), "string"},
      {xsd("token"), "string"},
      {xsd("language"), "string"},
      {xsd("nonNegativeInteger"), "integer"},
      {xsd("positiveInteger"), "integer"},
      {xsd("int"), "integer"},
      {xsd("long"), "integer"},
      {xsd("double"), "decimal"},
      {xsd("float"), "decimal"},
      {xsd("gYear"), "string"},
      {xsd("gYearMonth"), "string"},
      {xsd("hexBinary"), "string"},
      {xsd("base64Binary"), "string"},
      {xsd("time"), "string"},
  };
  const auto it = kFallbacks.find(iri);
  if (it == kFallbacks.end()) return std::nullopt;
  return it->second;
}

struct Compiler {
  const ShapeGraph& graph;
  SchemaIR ir;
  ValidationReport report;
  NameRegistry names;
  struct Compiled {
    bool is_class = false;
    std::string name;
  };
  std::map<std::string, Compiled> by_shape;
  std::vector<std::string> class_order;
  std::map<std::pair<std::string, std::string>, std::string> slot_groups;

  explicit Compiler(const ShapeGraph& g) : graph(g) {}

  std::string preferred(const std::optional<std::string>& name, const std::string& iri) {
    if (name && is_identifier(*name)) return *name;
    auto local = local_name(iri);
    return is_identifier(local) ? local : std::string("element");
  }

  std::string claim(const std::string& preferred_name) {
    if (builtin_datatype(preferred_name) != nullptr) return names.claim(preferred_name + "_2");
    return names.claim(preferred_name);
  }

  void declare(const NodeShape& shape) {
    if (!shape.target_class) {
      report.warning("NO_TARGET", shape.id, "node shape has no sh:targetClass and was skipped");
      return;
    }
    const auto& target = *shape.target_class;
    if (!is_absolute_iri(target)) {
      report.error("INVALID_TARGET", shape.id, "target <" + target + "> is not an absolute IRI");
      return;
    }
    if (target.starts_with(ns::kXsd)) {
      auto rule = default_rule_for_xsd(target);
      if (shape.pattern) {
        if (auto by_pattern = rule_for_pattern(*shape.pattern)) {
          rule = by_pattern;
        } else {
          report.warning("UNSUPPORTED_PATTERN", shape.id, "pattern '" + *shape.pattern + "' has no lexical rule");
        }
      }
      if (!rule) {
        report.warning("UNSUPPORTED_DATATYPE", shape.id, "datatype <" + target + "> is not supported; shape skipped");
        return;
      }
      const auto wanted = preferred(shape.name, target);
      DatatypeDef dt{"", target, *rule};
      const auto* builtin = builtin_datatype(wanted);
      std::string name;
      if (builtin != nullptr && builtin->base_uri == target && builtin->lexical_check == *rule && !names.taken(wanted)) {
        name = names.claim(wanted);
      } else {
        name = claim(wanted);
      }
      dt.name = name;
      ir.datatypes.emplace(name, dt);
      by_shape[shape.id] = {false, name};
      return;
    }
    ClassDef cls;
    cls.name = claim(preferred(shape.name, target));
    cls.class_uri = target;
    cls.description = shape.description;
    by_shape[shape.id] = {true, cls.name};
    class_order.push_back(cls.name);
    ir.classes.emplace(cls.name, std::move(cls));
  }

  std::optional<std::string> class_for(const std::string& iri, const std::vector<std::string>& node_refs,
                                       const std::string& where) {
    for (const auto& ref : node_refs) {
      const auto it = by_shape.find(ref);
      if (it != by_shape.end() && it->second.is_class && ir.classes.at(it->second.name).class_uri == iri) {
        return it->second.name;
      }
    }
    std::vector<std::string> candidates;
    for (const auto& name : class_order) {
      if (ir.classes.at(name).class_uri == iri) candidates.push_back(name);
    }
    if (candidates.empty()) return std::nullopt;
    if (candidates.size() > 1) {
      report.warning("AMBIGUOUS_CLASS", where,
                     "several shapes target <" + iri + ">; using '" + candidates.front() + "'");
    }
    return candidates.front();
  }

  std::optional<std::string> datatype_for(const std::string& iri, const std::optional<std::string>& pattern,
                                          const std::vector<std::string>& node_refs, const std::string& where) {
    for (const auto& ref : node_refs) {
      const auto it = by_shape.find(ref);
      if (it != by_shape.end() && !it->second.is_class && ir.datatypes.at(it->second.name).base_uri == iri) {
        return it->second.name;
      }
    }
    if (pattern) {
      if (const auto rule = rule_for_pattern(*pattern)) {
        for (const auto& [name, dt] : ir.datatypes) {
          if (dt.base_uri == iri && dt.lexical_check == *rule) return name;
        }
      }
      report.warning("PATTERN_IGNORED", where, "pattern '" + *pattern + "' does not match a known datatype");
    }
    for (const auto& dt : builtin_datatypes()) {
      if (dt.base_uri == iri) return dt.name;
    }
    if (auto fallback = fallback_datatype(iri)) {
      report.warning("DATATYPE_FALLBACK", where, "datatype <" + iri + "> is read as '" + *fallback + "'");
      return fallback;
    }
    return std::nullopt;
  }

  std::optional<RangeSpec> range_of(const PropertyShape& ps) {
    const auto& where = ps.id;
    auto unresolved = [&](const std::string& what) -> std::optional<RangeSpec> {
      report.error("UNRESOLVED_RANGE", where, "range " + what + " does not resolve; slot dropped");
      return std::nullopt;
    };
    auto shape_ref = [&](const std::vector<std::string>& refs) -> std::optional<Compiled> {
      for (const auto& ref : refs) {
        if (const auto it = by_shape.find(ref); it != by_shape.end()) return it->second;
      }
      return std::nullopt;
    };

    if (!ps.or_branches.empty()) {
      bool all_class = true;
      bool all_datatype = true;
      for (const auto& branch : ps.or_branches) {
        const auto ref = shape_ref(branch.node_refs);
        const bool is_class = !branch.class_constraints.empty() || (ref && ref->is_class);
        const bool is_datatype = !branch.datatype_constraints.empty() || (ref && !ref->is_class);
        all_class = all_class && is_class && !is_datatype;
        all_datatype = all_datatype && is_datatype && !is_class;
      }
      if (all_class) {
        std::vector<std::string> members;
        for (const auto& branch : ps.or_branches) {
          std::optional<std::string> member;
          if (!branch.class_constraints.empty()) {
            member = class_for(branch.class_constraints.front(), branch.node_refs, where);
            if (!member) return unresolved("<" + branch.class_constraints.front() + ">");
          } else {
            member = shape_ref(branch.node_refs)->name;
          }
          if (std::find(members.begin(), members.end(), *member) == members.end()) members.push_back(*member);
        }
        return members.size() == 1 ? RangeSpec::of_class(members.front()) : RangeSpec::of_union(members);
      }
      if (all_datatype) {
        const bool date_like = std::all_of(ps.or_branches.begin(), ps.or_branches.end(), [&](const ConstraintGroup& b) {
          return !b.datatype_constraints.empty() && is_date_like(b.datatype_constraints.front());
        });
        if (date_like) return RangeSpec::of_datatype("date");
        report.warning("DATATYPE_UNION", where, "union of datatypes is not supported; range falls back to string");
        return RangeSpec::of_datatype("string");
      }
      report.warning("MIXED_UNION", where, "union mixes classes and datatypes; range falls back to string");
      return RangeSpec::of_datatype("string");
    }
    if (!ps.class_constraints.empty()) {
      if (ps.class_constraints.size() > 1) {
        report.warning("MULTIPLE_CLASSES", where, "only the first sh:class constraint is used");
      }
      if (auto cls = class_for(ps.class_constraints.front(), ps.node_refs, where)) return RangeSpec::of_class(*cls);
      return unresolved("<" + ps.class_constraints.front() + ">");
    }
    if (!ps.datatype_constraints.empty()) {
      if (auto dt = datatype_for(ps.datatype_constraints.front(), ps.pattern, ps.node_refs, where)) {
        return RangeSpec::of_datatype(*dt);
      }
      return unresolved("<" + ps.datatype_constraints.front() + ">");
    }
    if (!ps.node_refs.empty()) {
      if (auto ref = shape_ref(ps.node_refs)) {
        return ref->is_class ? RangeSpec::of_class(ref->name) : RangeSpec::of_datatype(ref->name);
      }
      return unresolved("shape <" + ps.node_refs.front() + ">");
    }
    if (ps.node_kind) {
      if (*ps.node_kind == sh("IRI")) return RangeSpec::of_datatype("anyURI");
      if (*ps.node_kind == sh("Literal")) return RangeSpec::of_datatype("string");
      report.warning("UNCONSTRAINED_RANGE", where, "node kind <" + *ps.node_kind + "> is read as string");
      return RangeSpec::of_datatype("string");
    }
    report.warning("UNCONSTRAINED_RANGE", where, "property shape has no class or datatype; range is string");
    return RangeSpec::of_datatype("string");
  }

  void add_property(ClassDef& cls, const PropertyShape& ps) {
    if (ps.path.empty()) {
      report.warning("NO_PATH", ps.id, "property shape has no usable sh:path and was skipped");
      return;
    }
    if (!is_absolute_iri(ps.path)) {
      report.error("INVALID_PATH", ps.id, "path <" + ps.path + "> is not an absolute IRI");
      return;
    }
    const std::uint32_t min = ps.min_count.value_or(0);
    const std::uint32_t max = ps.max_count.value_or(kUnbounded);
    if (max == 0) {
      report.warning("PROHIBITED_PROPERTY", ps.id, "sh:maxCount 0 is not representable; property skipped");
      return;
    }
    if (min > max) {
      report.error("INVALID_CARDINALITY", ps.id, "sh:minCount exceeds sh:maxCount; property skipped");
      return;
    }
    auto range = range_of(ps);
    if (!range) return;

    const auto key = std::make_pair(preferred(ps.name, ps.path), ps.path);
    if (const auto it = slot_groups.find(key); it != slot_groups.end()) {
      const auto& name = it->second;
      if (std::find(cls.own_slots.begin(), cls.own_slots.end(), name) != cls.own_slots.end()) {
        report.warning("DUPLICATE_PROPERTY", ps.id, "class '" + cls.name + "' already has slot '" + name + "'");
        return;
      }
      cls.own_slots.push_back(name);
      const auto& def = ir.slots.at(name);
      SlotUsage usage;
      if (min != def.min_cardinality) usage.min_cardinality = min;
      if (max != def.max_cardinality) usage.max_cardinality = max;
      if (!(*range == def.range)) usage.range = *range;
      if (!usage.empty()) cls.slot_usage.emplace(name, usage);
      return;
    }
    SlotDef slot;
    slot.name = claim(key.first);
    slot.slot_uri = ps.path;
    slot.range = *range;
    slot.min_cardinality = min;
    slot.max_cardinality = max;
    slot.description = ps.description;
    slot_groups.emplace(key, slot.name);
    cls.own_slots.push_back(slot.name);
    ir.slots.emplace(slot.name, std::move(slot));
  }

  CompileResult run(const std::string& profile_id, const std::string& version) {
    ir.id = profile_id;
    ir.version = version;
    ir.prefix_map = builtin_prefixes();
    for (const auto& [prefix, iri] : graph.prefix_map) ir.prefix_map[prefix] = iri;
    for (const auto& warning : graph.parse_warnings) report.warning("PARSE_WARNING", "/", warning);
    for (const auto& shape : graph.node_shapes) declare(shape);
    for (const auto& shape : graph.node_shapes) {
      const auto it = by_shape.find(shape.id);
      if (it == by_shape.end()) continue;
      if (!it->second.is_class) {
        if (!shape.property_shapes.empty()) {
          report.warning("DATATYPE_PROPERTIES", shape.id, "property shapes on a datatype shape were ignored");
        }
        continue;
      }
      auto& cls = ir.classes.at(it->second.name);
      for (const auto& ps : shape.property_shapes) add_property(cls, ps);
    }
    check_invariants(ir);
    return {std::move(ir), std::move(report)};
  }
};

// ---------------------------------------------------------------------------------------------
// serialization

PrefixMap output_prefixes(const ShapeGraph& graph) {
  PrefixMap out = graph.prefix_map;
  for (const char* p : {"sh", "xsd", "rdf", "rdfs"}) out.emplace(p, builtin_prefixes().at(p));
  return out;
}

nlohmann::ordered_json ref(const std::string& iri, const PrefixMap& prefixes) {
  if (iri.starts_with("_:")) return {{"@id", iri}};
  return {{"@id", compact_iri(iri, prefixes).value_or(iri)}};
}

nlohmann::ordered_json refs(const std::vector<std::string>& iris, const PrefixMap& prefixes) {
  if (iris.size() == 1) return ref(iris.front(), prefixes);
  auto out = nlohmann::ordered_json::array();
  for (const auto& iri : iris) out.push_back(ref(iri, prefixes));
  return out;
}

nlohmann::ordered_json group_json(const ConstraintGroup& group, const PrefixMap& prefixes) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  if (!group.class_constraints.empty()) out["sh:class"] = refs(group.class_constraints, prefixes);
  if (!group.datatype_constraints.empty()) out["sh:datatype"] = refs(group.datatype_constraints, prefixes);
  if (!group.node_refs.empty()) out["sh:node"] = refs(group.node_refs, prefixes);
  if (group.pattern) out["sh:pattern"] = *group.pattern;
  return out;
}

std::string turtle_string(std::string_view text) {
  std::string out = "\"";
  for (const char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string turtle_iri(const std::string& iri, const PrefixMap& prefixes) {
  if (iri.starts_with("_:")) return iri;
  if (auto compact = compact_iri(iri, prefixes)) return *compact;
  return "<" + iri + ">";
}

}  // namespace

ShapeGraph parse_jsonld(std::string_view document, const ParseOptions& options) {
  auto doc = jsonld::read(document, {options.context_override});
  ShapeGraph graph;
  graph.prefix_map = doc.prefixes;
  graph.parse_warnings = std::move(doc.warnings);
  ShapeReader reader{{}, graph.parse_warnings};
  for (const auto& node : doc.nodes) {
    if (node->id) reader.index.emplace(*node->id, node.get());
  }
  for (const auto& node : doc.nodes) {
    const bool property_typed = has_type(*node, sh("PropertyShape"));
    const bool node_typed = has_type(*node, sh("NodeShape"));
    const bool looks_like_node = node->get(sh("targetClass")) != nullptr || node->get(sh("property")) != nullptr;
    if (node_typed || (!property_typed && looks_like_node)) {
      graph.node_shapes.push_back(reader.node(*node));
    }
  }
  return graph;
}

CompileResult compile(const ShapeGraph& shapes, const std::string& profile_id, const std::string& version) {
  return Compiler(shapes).run(profile_id, version);
}

std::string serialize_jsonld(const ShapeGraph& shapes) {
  const auto prefixes = output_prefixes(shapes);
  nlohmann::ordered_json context = nlohmann::ordered_json::object();
  for (const auto& [prefix, iri] : prefixes) context[prefix] = iri;
  auto graph = nlohmann::ordered_json::array();
  for (const auto& shape : shapes.node_shapes) {
    nlohmann::ordered_json node = {{"@id", ref(shape.id, prefixes).at("@id")}, {"@type", "sh:NodeShape"}};
    if (shape.name) node["sh:name"] = *shape.name;
    if (shape.description) node["sh:description"] = *shape.description;
    if (shape.target_class) node["sh:targetClass"] = ref(*shape.target_class, prefixes);
    if (shape.pattern) node["sh:pattern"] = *shape.pattern;
    if (!shape.property_shapes.empty()) {
      auto properties = nlohmann::ordered_json::array();
      for (const auto& ps : shape.property_shapes) {
        nlohmann::ordered_json p = {{"@id", ref(ps.id, prefixes).at("@id")}, {"@type", "sh:PropertyShape"}};
        if (!ps.path.empty()) p["sh:path"] = ref(ps.path, prefixes);
        if (ps.name) p["sh:name"] = *ps.name;
        if (ps.description) p["sh:description"] = *ps.description;
        if (ps.min_count) p["sh:minCount"] = *ps.min_count;
        if (ps.max_count) p["sh:maxCount"] = *ps.max_count;
        if (!ps.class_constraints.empty()) p["sh:class"] = refs(ps.class_constraints, prefixes);
        if (!ps.datatype_constraints.empty()) p["sh:datatype"] = refs(ps.datatype_constraints, prefixes);
        if (!ps.node_refs.empty()) p["sh:node"] = refs(ps.node_refs, prefixes);
        if (ps.pattern) p["sh:pattern"] = *ps.pattern;
        if (ps.node_kind) p["sh:nodeKind"] = ref(*ps.node_kind, prefixes);
        if (!ps.or_branches.empty()) {
          auto list = nlohmann::ordered_json::array();
          for (const auto& branch : ps.or_branches) list.push_back(group_json(branch, prefixes));
          p["sh:or"] = {{"@list", std::move(list)}};
        }
        properties.push_back(std::move(p));
      }
      node["sh:property"] = std::move(properties);
    }
    graph.push_back(std::move(node));
  }
  nlohmann::ordered_json doc = {{"@context", std::move(context)}, {"@graph", std::move(graph)}};
  return doc.dump(2) + "\n";
}

std::string serialize_turtle(const ShapeGraph& shapes) {
  const auto prefixes = output_prefixes(shapes);
  std::ostringstream out;
  for (const auto& [prefix, iri] : prefixes) out << "@prefix " << prefix << ": <" << iri << "> .\n";
  auto t = [&](const std::string& iri) { return turtle_iri(iri, prefixes); };
  auto list = [&](const std::vector<std::string>& iris) {
    std::string joined;
    for (const auto& iri : iris) joined += (joined.empty() ? "" : ", ") + t(iri);
    return joined;
  };
  for (const auto& shape : shapes.node_shapes) {
    out << "\n" << t(shape.id) << "\n    a sh:NodeShape";
    if (shape.name) out << " ;\n    sh:name " << turtle_string(*shape.name);
    if (shape.description) out << " ;\n    sh:description " << turtle_string(*shape.description);
    if (shape.target_class) out << " ;\n    sh:targetClass " << t(*shape.target_class);
    if (shape.pattern) out << " ;\n    sh:pattern " << turtle_string(*shape.pattern);
    if (!shape.property_shapes.empty()) {
      std::vector<std::string> ids;
      for (const auto& ps : shape.property_shapes) ids.push_back(ps.id);
      out << " ;\n    sh:property " << list(ids);
    }
    out << " .\n";
    for (const auto& ps : shape.property_shapes) {
      out << "\n" << t(ps.id) << "\n    a sh:PropertyShape";
      if (!ps.path.empty()) out << " ;\n    sh:path " << t(ps.path);
      if (ps.name) out << " ;\n    sh:name " << turtle_string(*ps.name);
      if (ps.description) out << " ;\n    sh:description " << turtle_string(*ps.description);
      if (ps.min_count) out << " ;\n    sh:minCount " << *ps.min_count;
      if (ps.max_count) out << " ;\n    sh:maxCount " << *ps.max_count;
      if (!ps.class_constraints.empty()) out << " ;\n    sh:class " << list(ps.class_constraints);
      if (!ps.datatype_constraints.empty()) out << " ;\n    sh:datatype " << list(ps.datatype_constraints);
      if (!ps.node_refs.empty()) out << " ;\n    sh:node " << list(ps.node_refs);
      if (ps.pattern) out << " ;\n    sh:pattern " << turtle_string(*ps.pattern);
      if (ps.node_kind) out << " ;\n    sh:nodeKind " << t(*ps.node_kind);
      if (!ps.or_branches.empty()) {
        out << " ;\n    sh:or (";
        for (const auto& branch : ps.or_branches) {
          out << "\n        [";
          std::string sep = " ";
          if (!branch.class_constraints.empty()) { out << sep << "sh:class " << list(branch.class_constraints); sep = " ; "; }
          if (!branch.datatype_constraints.empty()) { out << sep << "sh:datatype " << list(branch.datatype_constraints); sep = " ; "; }
          if (!branch.node_refs.empty()) { out << sep << "sh:node " << list(branch.node_refs); sep = " ; "; }
          if (branch.pattern) out << sep << "sh:pattern " << turtle_string(*branch.pattern);
          out << " ]";
        }
        out << "\n    )";
      }
      out << " .\n";
    }
  }
  return out.str();
}

}  // namespace apkit
