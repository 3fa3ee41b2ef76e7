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
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace apkit {

/// A YAML/JSON value. Scalars keep their lexical form in `text`; maps keep key order.
class Node {
 public:
  enum class Kind { kNull, kString, kNumber, kBoolean, kMap, kList };

  Node() = default;
  static Node null() { return Node(); }
  static Node string(std::string text);
  static Node number(std::string text);
  static Node boolean(bool value);
  static Node map();
  static Node list();

  Kind kind() const { return kind_; }
  bool is_scalar() const { return kind_ != Kind::kMap && kind_ != Kind::kList; }
  bool is_map() const { return kind_ == Kind::kMap; }
  bool is_list() const { return kind_ == Kind::kList; }
  const std::string& text() const { return text_; }

  const std::vector<std::pair<std::string, Node>>& entries() const { return entries_; }
  std::vector<std::pair<std::string, Node>>& entries() { return entries_; }
  const std::vector<Node>& items() const { return items_; }
  std::vector<Node>& items() { return items_; }

  const Node* find(std::string_view key) const;
  Node* find(std::string_view key);
  /// Replaces an existing entry in place or appends a new one.
  void set(std::string key, Node value);
  bool erase(std::string_view key);
  void push_back(Node value) { items_.push_back(std::move(value)); }

  friend bool operator==(const Node&, const Node&) = default;

 private:
  Kind kind_ = Kind::kNull;
  std::string text_;
  std::vector<std::pair<std::string, Node>> entries_;
  std::vector<Node> items_;
};

struct InstanceDocument {
  std::string root_class;
  Node root;
  std::string source_name;

  friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;
};

/// Throws MALFORMED_INSTANCE on syntax errors or non-scalar map keys.
Node node_from_yaml(std::string_view text);
Node node_from_json(const nlohmann::ordered_json& value);
nlohmann::ordered_json to_json(const Node& node);
std::string to_yaml(const Node& node);

/// `.json` files are read as JSON, everything else as YAML. Throws IO, MALFORMED_INSTANCE.
InstanceDocument load_instance(const std::filesystem::path& path, std::string root_class);

}  // namespace apkit
