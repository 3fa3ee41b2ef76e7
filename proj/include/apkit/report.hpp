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

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace apkit {

enum class Severity { kError, kWarning };

struct Finding {
  Severity severity = Severity::kError;
  std::string rule;
  std::string path;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Structured list of findings shared by compilation diagnostics, extension linting,
/// instance validation and harvesting. Conformant iff there is no ERROR finding.
class ValidationReport {
 public:
  void add(Finding finding) { findings_.push_back(std::move(finding)); }
  void error(std::string rule, std::string path, std::string message);
  void warning(std::string rule, std::string path, std::string message);
  void append(const ValidationReport& other);

  const std::vector<Finding>& findings() const { return findings_; }
  bool conformant() const { return error_count() == 0; }
  bool empty() const { return findings_.empty(); }
  std::size_t error_count() const;
  std::size_t warning_count() const;

  nlohmann::json to_json() const;
  static ValidationReport from_json(const nlohmann::json& doc);
  /// One line per finding: `ERROR RULE at /path: message`.
  std::string to_text() const;

 private:
  std::vector<Finding> findings_;
};

}  // namespace apkit
