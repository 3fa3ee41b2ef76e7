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

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apkit/report.hpp"

namespace apkit {

struct HarvestSource {
  std::string name;
  std::string url;
  std::filesystem::path profile;
  std::string root_class;
  std::size_t page_cap = 100;
  int timeout_seconds = 30;
};

/// Reads a source config (YAML). A relative `profile` is resolved against the config's directory.
HarvestSource load_source(const std::filesystem::path& config);

struct RecordOutcome {
  std::string record_id;
  bool conformant = false;
  ValidationReport report;
};

struct HarvestRun {
  std::string source;
  std::string started;
  std::string finished;
  std::size_t pages = 0;
  std::size_t fetched = 0;
  std::size_t conformant = 0;
  std::size_t malformed = 0;
  bool truncated = false;
  std::vector<RecordOutcome> reports;
  std::optional<std::filesystem::path> emitted_graph;

  nlohmann::ordered_json to_json() const;
};

struct HarvestOptions {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
};

/// Fetches every page, validates each record against the source profile and writes
/// `records/`, `reports/`, `graph.nt` and `run.json` under `out_dir`. Throws NETWORK, IO.
HarvestRun harvest(const HarvestSource& source, const std::filesystem::path& out_dir, const HarvestOptions& options = {});

/// Proxy host and port for `url` from HTTP_PROXY / HTTPS_PROXY, honouring NO_PROXY.
/// Loopback hosts are never proxied.
std::optional<std::pair<std::string, int>> proxy_for(const std::string& url);

}  // namespace apkit
