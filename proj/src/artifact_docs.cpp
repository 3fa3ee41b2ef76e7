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
#include <fstream>
#include <sstream>

#include "apkit/artifact.hpp"
#include "apkit/error.hpp"

namespace apkit {

namespace {

std::string class_link(const std::string& name) { return "[" + name + "](" + name + ".md)"; }

std::string escape_cell(std::string text) {
  std::string out;
  for (const char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string range_cell(const SchemaIR& ir, const RangeSpec& range) {
  std::string out;
  for (const auto& member : range.members) {
    if (!out.empty()) out += " or ";
    out += ir.find_class(member) != nullptr ? class_link(member) : "`" + member + "`";
  }
  return out;
}

std::string class_page(const SchemaIR& ir, const ClassDef& cls) {
  std::ostringstream out;
  out << "# " << cls.name << "\n\n";
  if (cls.description) out << escape_cell(*cls.description) << "\n\n";
  out << "- class_uri: `" << cls.class_uri << "`\n";
  if (cls.is_mixin) out << "- mixin\n";
  if (cls.is_abstract) out << "- abstract\n";
  auto links = [&](const std::vector<std::string>& names) {
    std::string joined;
    for (const auto& n : names) joined += (joined.empty() ? "" : ", ") + class_link(n);
    return joined;
  };
  if (!cls.parents.empty()) out << "- parents: " << links(cls.parents) << "\n";
  if (!cls.mixins.empty()) out << "- mixins: " << links(cls.mixins) << "\n";
  std::vector<std::string> children;
  for (const auto& [name, other] : ir.classes) {
    if (std::find(other.parents.begin(), other.parents.end(), cls.name) != other.parents.end() ||
        std::find(other.mixins.begin(), other.mixins.end(), cls.name) != other.mixins.end()) {
      children.push_back(name);
    }
  }
  if (!children.empty()) out << "- used by: " << links(children) << "\n";
  out << "\n[Back to index](index.md)\n\n## Slots\n\n";
  const auto slots = effective_slots(ir, cls.name);
  if (slots.empty()) {
    out << "This class has no slots.\n";
    return out.str();
  }
  out << "| Slot | Range | Cardinality | slot_uri | Description |\n";
  out << "| --- | --- | --- | --- | --- |\n";
  for (const auto& [name, def] : slots) {
    std::string slot_cell = "`" + name + "`";
    if (def.super_slot) slot_cell += " (sub-slot of `" + *def.super_slot + "`)";
    out << "| " << slot_cell << " | " << range_cell(ir, def.range) << " | "
        << cardinality_string(def.min_cardinality, def.max_cardinality) << " | `" << def.slot_uri << "` | "
        << escape_cell(def.description.value_or("")) << " |\n";
  }
  return out.str();
}

}  // namespace

std::map<std::string, std::string> gen_docs(const SchemaIR& ir) {
  std::map<std::string, std::string> files;
  std::ostringstream index;
  index << "# " << ir.id << "\n\n";
  if (!ir.version.empty()) index << "Version " << ir.version << "\n\n";
  if (!ir.lineage.empty()) index << "Layered profile; see [layers](layers.md).\n\n";
  if (!ir.classes.empty()) {
    index << "## Classes\n\n| Class | class_uri | Description |\n| --- | --- | --- |\n";
    for (const auto& [name, cls] : ir.classes) {
      index << "| " << class_link(name) << " | `" << cls.class_uri << "` | "
            << escape_cell(cls.description.value_or("")) << " |\n";
      files.emplace(name + ".md", class_page(ir, cls));
    }
    index << "\n";
  }
  if (!ir.datatypes.empty()) {
    index << "## Datatypes\n\n| Datatype | Base | Lexical rule |\n| --- | --- | --- |\n";
    for (const auto& [name, dt] : ir.datatypes) {
      index << "| `" << name << "` | `" << dt.base_uri << "` | " << to_string(dt.lexical_check) << " |\n";
    }
    index << "\n";
  }
  files.emplace("index.md", index.str());
  if (!ir.lineage.empty()) {
    std::ostringstream layers;
    layers << "# Layers of " << ir.id << "\n\n[Back to index](index.md)\n\n";
    std::size_t depth = 0;
    for (const auto& id : ir.lineage) {
      layers << std::string(depth * 2, ' ') << "- `" << id << "`\n";
      ++depth;
    }
    layers << std::string(depth * 2, ' ') << "- `" << ir.id << "` (this profile)\n";
    files.emplace("layers.md", layers.str());
  }
  return files;
}

void write_files(const std::map<std::string, std::string>& files, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + dir.string() + "': " + ec.message());
  for (const auto& [name, content] : files) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + (dir / name).string() + "'");
    out << content;
  }
}

}  // namespace apkit
