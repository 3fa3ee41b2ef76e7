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

#include "apkit/report.hpp"

#include <algorithm>
#include <sstream>

namespace apkit {

void ValidationReport::error(std::string rule, std::string path, std::string message) {
  findings_.push_back({Severity::kError, std::move(rule), std::move(path), std::move(message)});
}

void ValidationReport::warning(std::string rule, std::string path, std::string message) {
  findings_.push_back({Severity::kWarning, std::move(rule), std::move(path), std::move(message)});
}

void ValidationReport::append(const ValidationReport& other) {
  findings_.insert(findings_.end(), other.findings_.begin(), other.findings_.end());
}

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(findings_.begin(), findings_.end(), [](const Finding& f) {
    return f.severity == Severity::kError;
  }));
}

std::size_t ValidationReport::warning_count() const { return findings_.size() - error_count(); }

nlohmann::json ValidationReport::to_json() const {
  auto items = nlohmann::json::array();
  for (const auto& f : findings_) {
    items.push_back({{"severity", f.severity == Severity::kError ? "ERROR" : "WARNING"},
                     {"rule", f.rule},
                     {"path", f.path},
                     {"message", f.message}});
  }
  return {{"conformant", conformant()}, {"findings", std::move(items)}};
}

ValidationReport ValidationReport::from_json(const nlohmann::json& doc) {
  ValidationReport report;
  for (const auto& item : doc.at("findings")) {
    report.add({item.at("severity").get<std::string>() == "ERROR" ? Severity::kError : Severity::kWarning,
                item.at("rule").get<std::string>(), item.at("path").get<std::string>(),
                item.at("message").get<std::string>()});
  }
  return report;
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const auto& f : findings_) {
    out << (f.severity == Severity::kError ? "ERROR" : "WARNING") << ' ' << f.rule;
    if (!f.path.empty()) {
      out << " at " << f.path;
    }
    out << ": " << f.message << '\n';
  }
  return out.str();
}

}  // namespace apkit
