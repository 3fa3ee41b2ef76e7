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

#include "apkit/instance.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "apkit/error.hpp"

namespace apkit {

Node Node::string(std::string text) {
  Node n;
  n.kind_ = Kind::kString;
  n.text_ = std::move(text);
  return n;
}

Node Node::number(std::string text) {
  Node n;
  n.kind_ = Kind::kNumber;
  n.text_ = std::move(text);
  return n;
}

Node Node::boolean(bool value) {
  Node n;
  n.kind_ = Kind::kBoolean;
  n.text_ = value ? "true" : "false";
  return n;
}

Node Node::map() {
  Node n;
  n.kind_ = Kind::kMap;
  return n;
}

Node Node::list() {
  Node n;
  n.kind_ = Kind::kList;
  return n;
}

const Node* Node::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

Node* Node::find(std::string_view key) {
  for (auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

void Node::set(std::string key, Node value) {
  if (auto* existing = find(key)) {
    *existing = std::move(value);
    return;
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

bool Node::erase(std::string_view key) {
  const auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

namespace {

const std::regex& yaml_int() {
  static const std::regex kRe(R"([-+]?[0-9]+|0o[0-7]+|0x[0-9a-fA-F]+)");
  return kRe;
}

const std::regex& yaml_float() {
  static const std::regex kRe(R"([-+]?(\.[0-9]+|[0-9]+(\.[0-9]*)?)([eE][-+]?[0-9]+)?)");
  return kRe;
}

Node from_yaml(const YAML::Node& y) {
  switch (y.Type()) {
    case YAML::NodeType::Undefined:
    case YAML::NodeType::Null:
      return Node::null();
    case YAML::NodeType::Scalar: {
      const auto& value = y.Scalar();
      if (y.Tag() == "!") return Node::string(value);
      if (value == "true" || value == "True" || value == "TRUE") return Node::boolean(true);
      if (value == "false" || value == "False" || value == "FALSE") return Node::boolean(false);
      if (value == "~" || value == "null" || value == "Null" || value == "NULL") return Node::null();
      if (std::regex_match(value, yaml_int()) || std::regex_match(value, yaml_float())) return Node::number(value);
      return Node::string(value);
    }
    case YAML::NodeType::Sequence: {
      auto out = Node::list();
      for (const auto& item : y) out.push_back(from_yaml(item));
      return out;
    }
    case YAML::NodeType::Map: {
      auto out = Node::map();
      for (const auto& entry : y) {
        if (!entry.first.IsScalar()) {
          throw Error(ErrorCode::kMalformedInstance, "map keys must be scalars");
        }
        const auto key = entry.first.Scalar();
        if (out.find(key) != nullptr) {
          throw Error(ErrorCode::kMalformedInstance, "duplicate map key '" + key + "'");
        }
        out.entries().emplace_back(key, from_yaml(entry.second));
      }
      return out;
    }
  }
  return Node::null();
}

void emit(YAML::Emitter& out, const Node& node) {
  switch (node.kind()) {
    case Node::Kind::kNull:
      out << YAML::Null;
      break;
    case Node::Kind::kString:
      out << YAML::DoubleQuoted << node.text();
      break;
    case Node::Kind::kNumber:
    case Node::Kind::kBoolean:
      out << node.text();
      break;
    case Node::Kind::kList:
      out << YAML::BeginSeq;
      for (const auto& item : node.items()) emit(out, item);
      out << YAML::EndSeq;
      break;
    case Node::Kind::kMap:
      out << YAML::BeginMap;
      for (const auto& [key, value] : node.entries()) {
        out << YAML::Key << key << YAML::Value;
        emit(out, value);
      }
      out << YAML::EndMap;
      break;
  }
}

}  // namespace

Node node_from_yaml(std::string_view text) {
  try {
    return from_yaml(YAML::Load(std::string(text)));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kMalformedInstance, e.what());
  }
}

Node node_from_json(const nlohmann::ordered_json& value) {
  switch (value.type()) {
    case nlohmann::ordered_json::value_t::null:
    case nlohmann::ordered_json::value_t::discarded:
      return Node::null();
    case nlohmann::ordered_json::value_t::string:
      return Node::string(value.get<std::string>());
    case nlohmann::ordered_json::value_t::boolean:
      return Node::boolean(value.get<bool>());
    case nlohmann::ordered_json::value_t::number_integer:
    case nlohmann::ordered_json::value_t::number_unsigned:
    case nlohmann::ordered_json::value_t::number_float:
      return Node::number(value.dump());
    case nlohmann::ordered_json::value_t::array: {
      auto out = Node::list();
      for (const auto& item : value) out.push_back(node_from_json(item));
      return out;
    }
    case nlohmann::ordered_json::value_t::object: {
      auto out = Node::map();
      for (const auto& [key, item] : value.items()) out.entries().emplace_back(key, node_from_json(item));
      return out;
    }
    case nlohmann::ordered_json::value_t::binary:
      break;
  }
  throw Error(ErrorCode::kMalformedInstance, "unsupported JSON value");
}

nlohmann::ordered_json to_json(const Node& node) {
  switch (node.kind()) {
    case Node::Kind::kNull:
      return nullptr;
    case Node::Kind::kString:
      return node.text();
    case Node::Kind::kBoolean:
      return node.text() == "true";
    case Node::Kind::kNumber: {
      try {
        return nlohmann::ordered_json::parse(node.text());
      } catch (const nlohmann::json::exception&) {
        return node.text();
      }
    }
    case Node::Kind::kList: {
      auto out = nlohmann::ordered_json::array();
      for (const auto& item : node.items()) out.push_back(to_json(item));
      return out;
    }
    case Node::Kind::kMap: {
      auto out = nlohmann::ordered_json::object();
      for (const auto& [key, value] : node.entries()) out[key] = to_json(value);
      return out;
    }
  }
  return nullptr;
}

std::string to_yaml(const Node& node) {
  YAML::Emitter out;
  emit(out, node);
  return std::string(out.c_str()) + "\n";
}

InstanceDocument load_instance(const std::filesystem::path& path, std::string root_class) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read instance '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  InstanceDocument doc;
  doc.root_class = std::move(root_class);
  doc.source_name = path.filename().string();
  if (path.extension() == ".json") {
    try {
      doc.root = node_from_json(nlohmann::ordered_json::parse(buffer.str()));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kMalformedInstance, path.string() + ": " + e.what());
    }
  } else {
    doc.root = node_from_yaml(buffer.str());
  }
  return doc;
}

}  // namespace apkit
