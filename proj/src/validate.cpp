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

#include "apkit/validate.hpp"

#include <algorithm>

#include "apkit/error.hpp"

namespace apkit {

namespace {

std::string child_path(const std::string& parent, std::string_view key) {
  return (parent == "/" ? "/" : parent + "/") + std::string(key);
}

bool is_abstract_like(const ClassDef& cls) { return cls.is_mixin || cls.is_abstract; }

class Validator {
 public:
  Validator(const SchemaIR& ir, ValidationReport& report) : ir_(ir), report_(report) {}

  void node(const Node& value, const RangeSpec& range, const std::string& path) {
    if (!value.is_map()) {
      if (value.kind() == Node::Kind::kString) {
        const auto iri = expand_if_curie(value.text(), ir_.prefix_map);
        if (!lexical_check(LexicalRule::kAnyUri, iri)) {
          report_.error("RANGE_CLASS", path, "expected an object or an IRI reference, got '" + value.text() + "'");
        }
        return;
      }
      report_.error("RANGE_CLASS", path, "expected an object of class " + describe(range));
      return;
    }
    const Node* type = value.find("@type");
    if (type == nullptr) {
      untyped(value, range, path);
      return;
    }
    if (!type->is_scalar() || type->kind() == Node::Kind::kNull) {
      report_.error("RANGE_CLASS", child_path(path, "@type"), "@type must be a scalar class name");
      body(value, fallback_class(range), path);
      return;
    }
    const auto named = resolve_type_name(ir_, type->text());
    if (!named) {
      report_.error("RANGE_CLASS", child_path(path, "@type"), "unknown class '" + type->text() + "'");
      body(value, fallback_class(range), path);
      return;
    }
    const auto& cls = ir_.classes.at(*named);
    const bool in_range = std::any_of(range.members.begin(), range.members.end(),
                                      [&](const std::string& m) { return subsumes(ir_, m, *named); });
    if (is_abstract_like(cls)) {
      report_.error("ABSTRACT_INSTANTIATION", path,
                    "class '" + *named + "' is " + (cls.is_mixin ? "a mixin" : "abstract") + " and cannot be instantiated");
      body(value, in_range ? *named : fallback_class(range), path);
      return;
    }
    if (!in_range) {
      report_.error("RANGE_CLASS", path, "class '" + *named + "' is not subsumed by " + describe(range));
    }
    body(value, *named, path);
  }

  void body(const Node& value, const std::string& class_name, const std::string& path) {
    const auto slots = effective_slots(ir_, class_name);
    auto lookup = [&](std::string_view key) -> const SlotDef* {
      for (const auto& slot : slots) {
        if (slot.name == key) return &slot.def;
      }
      return nullptr;
    };
    for (const auto& [key, child] : value.entries()) {
      const auto here = child_path(path, key);
      if (key == "@type") continue;
      if (key == "@id") {
        if (child.kind() != Node::Kind::kString) report_.error("RANGE_DATATYPE", here, "@id must be a string");
        continue;
      }
      const auto* slot = lookup(key);
      if (slot == nullptr) {
        report_.error("UNKNOWN_SLOT", here, "class '" + class_name + "' has no slot '" + key + "'");
        continue;
      }
      slot_values(child, *slot, here);
    }
    for (const auto& slot : slots) {
      if (slot.def.min_cardinality >= 1 && value.find(slot.name) == nullptr) {
        report_.error("CARDINALITY", child_path(path, slot.name),
                      "required slot '" + slot.name + "' is missing (expected " +
                          cardinality_string(slot.def.min_cardinality, slot.def.max_cardinality) + ")");
      }
    }
  }

 private:
  void slot_values(const Node& value, const SlotDef& slot, const std::string& path) {
    std::vector<std::pair<const Node*, std::string>> items;
    if (value.is_list()) {
      for (std::size_t i = 0; i < value.items().size(); ++i) {
        if (value.items()[i].kind() != Node::Kind::kNull) items.emplace_back(&value.items()[i], path + "/" + std::to_string(i));
      }
    } else if (value.kind() != Node::Kind::kNull) {
      items.emplace_back(&value, path);
    }
    const auto count = static_cast<std::uint32_t>(items.size());
    if (count < slot.min_cardinality || count > slot.max_cardinality) {
      report_.error("CARDINALITY", path,
                    "slot '" + slot.name + "' has " + std::to_string(count) + " value(s), expected " +
                        cardinality_string(slot.min_cardinality, slot.max_cardinality));
    }
    for (const auto& [item, item_path] : items) {
      if (slot.range.is_class_valued()) {
        node(*item, slot.range, item_path);
      } else {
        datatype_value(*item, slot.range.members.front(), item_path);
      }
    }
  }

  void datatype_value(const Node& value, const std::string& datatype, const std::string& path) {
    if (!value.is_scalar()) {
      report_.error("RANGE_DATATYPE", path, "expected a " + datatype + " literal, got a structured value");
      return;
    }
    const auto dt = ir_.find_datatype(datatype);
    if (!dt) {
      report_.error("RANGE_DATATYPE", path, "unknown datatype '" + datatype + "'");
      return;
    }
    auto text = value.text();
    if (dt->lexical_check == LexicalRule::kAnyUri) text = expand_if_curie(text, ir_.prefix_map);
    if (!lexical_check(dt->lexical_check, text)) {
      report_.error("RANGE_DATATYPE", path,
                    "'" + value.text() + "' is not a valid " + datatype + " (" + std::string(to_string(dt->lexical_check)) + ")");
    }
  }

  void untyped(const Node& value, const RangeSpec& range, const std::string& path) {
    if (range.kind == RangeKind::kUnion) {
      for (const auto& member : range.members) {
        ValidationReport trial;
        Validator probe(ir_, trial);
        probe.member(value, member, path);
        if (trial.conformant()) {
          report_.append(trial);
          return;
        }
      }
    }
    member(value, range.members.front(), path);
  }

  void member(const Node& value, const std::string& class_name, const std::string& path) {
    const auto& cls = ir_.classes.at(class_name);
    if (is_abstract_like(cls)) {
      report_.error("ABSTRACT_INSTANTIATION", path,
                    "range class '" + class_name + "' cannot be instantiated; add an @type naming a concrete subclass");
    }
    body(value, class_name, path);
  }

  std::string fallback_class(const RangeSpec& range) const { return range.members.front(); }

  static std::string describe(const RangeSpec& range) {
    std::string out;
    for (const auto& m : range.members) out += (out.empty() ? "'" : " or '") + m + "'";
    return out;
  }

  const SchemaIR& ir_;
  ValidationReport& report_;
};

std::optional<std::string> nearest_base_ancestor(const SchemaIR& ext, const SchemaIR& base, const std::string& name) {
  if (base.find_class(name) != nullptr) return name;
  for (const auto& ancestor : parent_ancestors(ext, name)) {
    if (base.find_class(ancestor) != nullptr) return ancestor;
  }
  return std::nullopt;
}

class Projector {
 public:
  Projector(const SchemaIR& ext, const SchemaIR& base) : ext_(ext), base_(base) {}

  std::string base_class(const std::string& name) const {
    if (auto found = nearest_base_ancestor(ext_, base_, name)) return *found;
    throw Error(ErrorCode::kNotAnExtension, "class '" + name + "' has no ancestor in profile '" + base_.id + "'");
  }

  Node map(const Node& value, const std::string& ext_class, const std::string& base_cls) const {
    auto out = Node::map();
    const auto base_slots = effective_slots(base_, base_cls);
    auto base_has = [&](const std::string& slot) {
      return std::any_of(base_slots.begin(), base_slots.end(), [&](const ResolvedSlot& r) { return r.name == slot; });
    };
    for (const auto& [key, child] : value.entries()) {
      if (key == "@id") {
        out.set(key, child);
        continue;
      }
      if (key == "@type") {
        out.set(key, Node::string(base_cls));
        continue;
      }
      const auto ext_slot = effective_slot(ext_, ext_class, key);
      if (!ext_slot) continue;
      std::optional<std::string> target;
      for (std::optional<std::string> s = key; s; s = ext_.slots.at(*s).super_slot) {
        if (base_.slots.contains(*s) && base_has(*s)) {
          target = s;
          break;
        }
      }
      if (!target) continue;
      const auto base_slot = *effective_slot(base_, base_cls, *target);
      auto projected = values(child, *ext_slot, base_slot);
      if (auto* existing = out.find(*target)) {
        auto merged = Node::list();
        for (const Node* part : {existing, &projected}) {
          if (part->is_list()) {
            for (const auto& item : part->items()) merged.push_back(item);
          } else {
            merged.push_back(*part);
          }
        }
        *existing = std::move(merged);
      } else {
        out.set(*target, std::move(projected));
      }
    }
    return out;
  }

  Node values(const Node& value, const SlotDef& ext_slot, const SlotDef& base_slot) const {
    if (!ext_slot.range.is_class_valued()) return value;
    if (value.is_list()) {
      auto out = Node::list();
      for (const auto& item : value.items()) out.push_back(single(item, ext_slot.range, base_slot.range));
      return out;
    }
    return single(value, ext_slot.range, base_slot.range);
  }

  Node single(const Node& value, const RangeSpec& ext_range, const RangeSpec& base_range) const {
    if (!value.is_map()) return value;
    const auto ext_class = implied_class(ext_, value, ext_range);
    const auto target = base_class(ext_class);
    auto out = map(value, ext_class, target);
    if (out.find("@type") == nullptr) {
      const bool implied_same = base_range.kind == RangeKind::kClass ? base_range.members.front() == target
                                                                     : implied_class(base_, out, base_range) == target;
      if (!implied_same) {
        auto typed = Node::map();
        typed.entries().emplace_back("@type", Node::string(target));
        for (auto& entry : out.entries()) typed.entries().push_back(std::move(entry));
        out = std::move(typed);
      }
    }
    return out;
  }

 private:
  const SchemaIR& ext_;
  const SchemaIR& base_;
};

}  // namespace

std::optional<std::string> resolve_type_name(const SchemaIR& ir, std::string_view value) {
  if (ir.find_class(value) != nullptr) return std::string(value);
  const auto iri = expand_if_curie(value, ir.prefix_map);
  std::optional<std::string> found;
  for (const auto& [name, cls] : ir.classes) {
    if (cls.class_uri == iri) {
      if (found) return std::nullopt;
      found = name;
    }
  }
  return found;
}

std::string implied_class(const SchemaIR& ir, const Node& node, const RangeSpec& range) {
  if (const auto* type = node.find("@type"); type != nullptr && type->is_scalar()) {
    if (auto named = resolve_type_name(ir, type->text())) return *named;
  }
  if (range.kind == RangeKind::kUnion) {
    for (const auto& member : range.members) {
      ValidationReport trial;
      Validator probe(ir, trial);
      probe.body(node, member, "/");
      if (trial.conformant()) return member;
    }
  }
  return range.members.front();
}

ValidationReport validate(const InstanceDocument& doc, const SchemaIR& ir) {
  const auto* root = ir.find_class(doc.root_class);
  if (root == nullptr) {
    throw Error(ErrorCode::kUnknownRootClass, "profile '" + ir.id + "' has no class '" + doc.root_class + "'");
  }
  ValidationReport report;
  Validator validator(ir, report);
  if (!doc.root.is_map()) {
    report.error("RANGE_CLASS", "/", "document root must be a map");
    return report;
  }
  validator.node(doc.root, RangeSpec::of_class(doc.root_class), "/");
  return report;
}

InstanceDocument project_to_base(const InstanceDocument& doc, const SchemaIR& ext_ir, const SchemaIR& base_ir) {
  for (const auto& [name, cls] : base_ir.classes) {
    const auto* mirror = ext_ir.find_class(name);
    if (mirror == nullptr || mirror->class_uri != cls.class_uri) {
      throw Error(ErrorCode::kNotAnExtension, "class '" + name + "' of '" + base_ir.id + "' is missing from '" + ext_ir.id + "'");
    }
  }
  for (const auto& [name, slot] : base_ir.slots) {
    const auto* mirror = ext_ir.find_slot(name);
    if (mirror == nullptr || mirror->slot_uri != slot.slot_uri) {
      throw Error(ErrorCode::kNotAnExtension, "slot '" + name + "' of '" + base_ir.id + "' is missing from '" + ext_ir.id + "'");
    }
  }
  if (ext_ir.find_class(doc.root_class) == nullptr) {
    throw Error(ErrorCode::kUnknownRootClass, "profile '" + ext_ir.id + "' has no class '" + doc.root_class + "'");
  }
  Projector projector(ext_ir, base_ir);
  InstanceDocument out;
  out.source_name = doc.source_name;
  const auto root_range = RangeSpec::of_class(doc.root_class);
  const auto ext_class = doc.root.is_map() ? implied_class(ext_ir, doc.root, root_range) : doc.root_class;
  out.root_class = projector.base_class(doc.root_class);
  if (!doc.root.is_map()) {
    out.root = doc.root;
    return out;
  }
  const auto target = projector.base_class(ext_class);
  out.root = projector.map(doc.root, ext_class, target);
  if (out.root.find("@type") == nullptr && target != out.root_class) {
    auto typed = Node::map();
    typed.entries().emplace_back("@type", Node::string(target));
    for (auto& entry : out.root.entries()) typed.entries().push_back(std::move(entry));
    out.root = std::move(typed);
  }
  return out;
}

}  // namespace apkit
