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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apkit/schema_ir.hpp"

namespace apkit::testing {

inline std::filesystem::path source_dir() { return APKIT_SOURCE_DIR; }
inline std::filesystem::path fixture(const std::string& relative) { return source_dir() / "tests" / "fixtures" / relative; }
inline std::filesystem::path bundled_profile_path(const std::string& id) {
  return source_dir() / "resources" / "profiles" / (id + ".profile.json");
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline const SchemaIR& bundled_profile(const std::string& id) {
  static std::map<std::string, SchemaIR> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, load_profile(bundled_profile_path(id))).first;
  return it->second;
}

inline nlohmann::json manifest() { return nlohmann::json::parse(read_text(fixture("instances/manifest.json"))); }

/// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::path(APKIT_BINARY_DIR) / "scratch" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

struct ProcessResult {
  int status = -1;
  std::string output;
};

/// Runs a shell command and captures its stdout.
inline ProcessResult run_process(const std::string& command) {
  ProcessResult result;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  while (std::fgets(buffer, sizeof buffer, pipe) != nullptr) result.output += buffer;
  const int status = ::pclose(pipe);
  result.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline std::string python_oracle(const std::string& script) {
  return std::string(APKIT_PYTHON) + " " + (source_dir() / "tests" / "oracles" / script).string();
}

inline std::string quote(const std::filesystem::path& path) { return "'" + path.string() + "'"; }

}  // namespace apkit::testing
