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

#include "apkit/harvest.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <yaml-cpp/yaml.h>

#include "apkit/error.hpp"
#include "apkit/instance.hpp"
#include "apkit/rdf.hpp"
#include "apkit/schema_ir.hpp"
#include "apkit/validate.hpp"

namespace apkit {

namespace {

struct Url {
  std::string scheme;
  std::string host;
  int port = 0;
  std::string target;

  std::string origin() const { return scheme + "://" + host + ":" + std::to_string(port); }
  std::string str() const { return scheme + "://" + host + ":" + std::to_string(port) + target; }
};

std::string lower(std::string text) {
  for (auto& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return text;
}

Url parse_url(const std::string& text) {
  const auto scheme_end = text.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorCode::kNetwork, "not an absolute URL: '" + text + "'");
  Url url;
  url.scheme = lower(text.substr(0, scheme_end));
  if (url.scheme != "http" && url.scheme != "https") throw Error(ErrorCode::kNetwork, "unsupported scheme in '" + text + "'");
  const auto rest = text.substr(scheme_end + 3);
  const auto slash = rest.find_first_of("/?");
  auto authority = rest.substr(0, slash);
  url.target = slash == std::string::npos ? "/" : rest.substr(slash);
  if (url.target.front() == '?') url.target = "/" + url.target;
  if (const auto at = authority.rfind('@'); at != std::string::npos) authority = authority.substr(at + 1);
  const auto colon = authority.rfind(':');
  if (colon != std::string::npos && authority.find(']') == std::string::npos) {
    url.host = authority.substr(0, colon);
    url.port = std::stoi(authority.substr(colon + 1));
  } else {
    url.host = authority;
    url.port = url.scheme == "https" ? 443 : 80;
  }
  if (url.host.empty()) throw Error(ErrorCode::kNetwork, "missing host in '" + text + "'");
  return url;
}

Url resolve(const Url& base, const std::string& ref) {
  if (ref.find("://") != std::string::npos) return parse_url(ref);
  Url out = base;
  if (ref.starts_with("/")) {
    out.target = ref;
  } else if (ref.starts_with("?")) {
    out.target = base.target.substr(0, base.target.find('?')) + ref;
  } else {
    const auto path = base.target.substr(0, base.target.find('?'));
    out.target = path.substr(0, path.rfind('/') + 1) + ref;
  }
  return out;
}

const char* env(const char* upper, const char* lower_name) {
  if (const char* v = std::getenv(upper); v != nullptr && *v != '\0') return v;
  if (const char* v = std::getenv(lower_name); v != nullptr && *v != '\0') return v;
  return nullptr;
}

bool bypass_proxy(const std::string& host) {
  if (host == "localhost" || host == "127.0.0.1" || host == "[::1]") return true;
  const char* no_proxy = env("NO_PROXY", "no_proxy");
  if (no_proxy == nullptr) return false;
  std::stringstream list(no_proxy);
  std::string entry;
  const auto h = lower(host);
  while (std::getline(list, entry, ',')) {
    entry.erase(0, entry.find_first_not_of(" \t"));
    entry.erase(entry.find_last_not_of(" \t") + 1);
    if (entry.empty()) continue;
    if (entry == "*") return true;
    entry = lower(entry);
    if (const auto colon = entry.find(':'); colon != std::string::npos) entry = entry.substr(0, colon);
    if (entry.front() == '.') entry = entry.substr(1);
    if (h == entry || (h.size() > entry.size() && h.ends_with("." + entry))) return true;
  }
  return false;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << text;
}

std::string fetch(const Url& url, const HarvestSource& source, const HarvestOptions& options) {
  std::string last_error;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options.initial_backoff * (1 << (attempt - 1)));
    std::unique_ptr<httplib::Client> client;
    try {
      client = std::make_unique<httplib::Client>(url.origin());
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kNetwork, std::string("cannot create client for ") + url.origin() + ": " + e.what());
    }
    if (!client->is_valid()) throw Error(ErrorCode::kNetwork, "cannot connect to " + url.origin() + " (HTTPS support missing?)");
    client->set_connection_timeout(source.timeout_seconds);
    client->set_read_timeout(source.timeout_seconds);
    client->set_follow_location(true);
    if (auto proxy = proxy_for(url.str())) client->set_proxy(proxy->first, proxy->second);
    auto response = client->Get(url.target);
    if (!response) {
      last_error = httplib::to_string(response.error());
      continue;
    }
    if (response->status >= 500) {
      last_error = "HTTP " + std::to_string(response->status);
      continue;
    }
    if (response->status != 200) {
      throw Error(ErrorCode::kNetwork, "GET " + url.str() + " returned HTTP " + std::to_string(response->status));
    }
    return response->body;
  }
  throw Error(ErrorCode::kNetwork, "GET " + url.str() + " failed after " + std::to_string(options.max_attempts) +
                                       " attempts: " + last_error);
}

std::string record_label(std::size_t index) {
  std::ostringstream out;
  out << std::setw(4) << std::setfill('0') << index;
  return out.str();
}

}  // namespace

std::optional<std::pair<std::string, int>> proxy_for(const std::string& url_text) {
  const auto url = parse_url(url_text);
  const char* proxy = url.scheme == "https" ? env("HTTPS_PROXY", "https_proxy") : env("HTTP_PROXY", "http_proxy");
  if (proxy == nullptr || bypass_proxy(url.host)) return std::nullopt;
  std::string text = proxy;
  if (text.find("://") == std::string::npos) text = "http://" + text;
  const auto parsed = parse_url(text);
  return std::make_pair(parsed.host, parsed.port);
}

HarvestSource load_source(const std::filesystem::path& config) {
  YAML::Node doc;
  try {
    doc = YAML::LoadFile(config.string());
  } catch (const YAML::BadFile&) {
    throw Error(ErrorCode::kIo, "cannot read source config '" + config.string() + "'");
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kMalformedInstance, config.string() + ": " + e.what());
  }
  HarvestSource source;
  try {
    source.name = doc["name"].as<std::string>();
    source.url = doc["url"].as<std::string>();
    source.profile = doc["profile"].as<std::string>();
    source.root_class = doc["root_class"].as<std::string>();
    if (doc["page_cap"]) source.page_cap = doc["page_cap"].as<std::size_t>();
    if (doc["timeout_seconds"]) source.timeout_seconds = doc["timeout_seconds"].as<int>();
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kMalformedInstance, config.string() + ": source needs name, url, profile and root_class (" + e.what() + ")");
  }
  if (source.profile.is_relative()) source.profile = config.parent_path() / source.profile;
  parse_url(source.url);
  return source;
}

nlohmann::ordered_json HarvestRun::to_json() const {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    records.push_back({{"record_id", r.record_id}, {"conformant", r.conformant}, {"errors", r.report.error_count()}});
  }
  nlohmann::ordered_json out = {{"source", source},       {"started", started},       {"finished", finished},
                                {"pages", pages},         {"fetched", fetched},       {"conformant", conformant},
                                {"malformed", malformed}, {"truncated", truncated},   {"records", std::move(records)}};
  out["emitted_graph"] = emitted_graph ? nlohmann::ordered_json(emitted_graph->filename().string()) : nlohmann::ordered_json();
  return out;
}

HarvestRun harvest(const HarvestSource& source, const std::filesystem::path& out_dir, const HarvestOptions& options) {
  const auto ir = load_profile(source.profile);
  if (ir.find_class(source.root_class) == nullptr) {
    throw Error(ErrorCode::kUnknownRootClass, "profile '" + ir.id + "' has no class '" + source.root_class + "'");
  }
  HarvestRun run;
  run.source = source.name;
  run.started = timestamp();

  std::error_code ec;
  std::filesystem::create_directories(out_dir / "records", ec);
  std::filesystem::create_directories(out_dir / "reports", ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create output directory '" + out_dir.string() + "'");
  for (const auto* sub : {"records", "reports"}) {
    for (const auto& entry : std::filesystem::directory_iterator(out_dir / sub)) std::filesystem::remove(entry.path());
  }

  TripleSet graph;
  std::set<std::string> visited;
  std::optional<Url> next = parse_url(source.url);
  while (next) {
    if (run.pages >= source.page_cap) {
      run.truncated = true;
      break;
    }
    if (!visited.insert(next->str()).second) break;
    const auto body = fetch(*next, source, options);
    ++run.pages;
    nlohmann::ordered_json payload;
    try {
      payload = nlohmann::ordered_json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kMalformedPayload, "page " + next->str() + " is not JSON: " + e.what());
    }
    nlohmann::ordered_json items;
    const auto current = *next;
    next.reset();
    if (payload.is_array()) {
      items = payload;
    } else if (payload.is_object() && payload.contains("items") && payload.at("items").is_array()) {
      items = payload.at("items");
      if (payload.contains("next") && payload.at("next").is_string() && !payload.at("next").get<std::string>().empty()) {
        next = resolve(current, payload.at("next").get<std::string>());
      }
    } else {
      throw Error(ErrorCode::kMalformedPayload, "page " + current.str() + " is neither an array nor an {items, next} envelope");
    }
    for (const auto& item : items) {
      ++run.fetched;
      const auto label = record_label(run.fetched);
      RecordOutcome outcome;
      outcome.record_id = label;
      write_text(out_dir / "records" / (label + ".json"), item.dump(2) + "\n");
      if (!item.is_object()) {
        ++run.malformed;
        outcome.report.error("MALFORMED_PAYLOAD", "/", "record is not a JSON object");
      } else {
        if (item.contains("@id") && item.at("@id").is_string()) outcome.record_id = item.at("@id").get<std::string>();
        InstanceDocument doc{source.root_class, node_from_json(item), label};
        outcome.report = validate(doc, ir);
        outcome.conformant = outcome.report.conformant();
        if (outcome.conformant) {
          ++run.conformant;
          const auto triples = to_triples(doc, ir);
          for (auto triple : triples.triples()) {
            for (Term* t : {&triple.subject, &triple.object}) {
              if (t->kind == Term::Kind::kBlank) t->value = "r" + label + t->value;
            }
            graph.add(std::move(triple));
          }
        }
      }
      nlohmann::ordered_json report = {{"record_id", outcome.record_id}, {"conformant", outcome.conformant}};
      report["report"] = outcome.report.to_json();
      write_text(out_dir / "reports" / (label + ".json"), report.dump(2) + "\n");
      run.reports.push_back(std::move(outcome));
    }
  }
  run.emitted_graph = out_dir / "graph.nt";
  write_text(*run.emitted_graph, to_ntriples(graph));
  run.finished = timestamp();
  write_text(out_dir / "run.json", run.to_json().dump(2) + "\n");
  return run;
}

}  // namespace apkit
