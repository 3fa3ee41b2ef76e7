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

#include <doctest.h>

#include <cstdlib>
#include <functional>
#include <map>

#include "apkit/error.hpp"
#include "apkit/harvest.hpp"
#include "support/fixtures.hpp"
#include "support/mock_server.hpp"

using namespace apkit;
using apkit::testing::MockCatalogServer;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an apkit::Error");
  return ErrorCode::kIo;
}

HarvestSource source_for(const std::string& url) {
  HarvestSource source;
  source.name = "mock";
  source.url = url;
  source.profile = apkit::testing::bundled_profile_path("chem-dcat-ap");
  source.root_class = "Dataset";
  source.timeout_seconds = 5;
  return source;
}

HarvestOptions fast() {
  HarvestOptions options;
  options.initial_backoff = std::chrono::milliseconds(5);
  return options;
}

std::string page(const std::string& items, const std::string& next = "") {
  return R"({"items": [)" + items + "]" + (next.empty() ? "" : R"(, "next": ")" + next + "\"") + "}";
}

std::string dataset(int n) {
  return R"({"@id": "https://example.org/d/)" + std::to_string(n) + R"(", "title": "t", "description": "d"})";
}

/// Sets or clears proxy variables for the lifetime of the guard.
class EnvGuard {
 public:
  explicit EnvGuard(std::map<std::string, std::string> values) {
    for (const auto* name : {"HTTP_PROXY", "http_proxy", "HTTPS_PROXY", "https_proxy", "NO_PROXY", "no_proxy"}) {
      if (const char* v = std::getenv(name)) saved_[name] = v;
      ::unsetenv(name);
    }
    for (const auto& [name, value] : values) ::setenv(name.c_str(), value.c_str(), 1);
  }
  ~EnvGuard() {
    for (const auto* name : {"HTTP_PROXY", "http_proxy", "HTTPS_PROXY", "https_proxy", "NO_PROXY", "no_proxy"}) {
      ::unsetenv(name);
    }
    for (const auto& [name, value] : saved_) ::setenv(name.c_str(), value.c_str(), 1);
  }

 private:
  std::map<std::string, std::string> saved_;
};

}  // namespace

TEST_CASE("harvesting the two-page fixture") {
  MockCatalogServer server;
  server.serve_fixture("page-1.json");
  server.serve_fixture("page-2.json");
  const auto out = apkit::testing::scratch_dir("harvest-fixture");
  const auto run = harvest(source_for(server.url("page-1.json")), out, fast());
  CHECK(run.pages == 2);
  CHECK(run.fetched == 4);
  CHECK(run.conformant == 3);
  CHECK(run.malformed == 0);
  CHECK_FALSE(run.truncated);
  REQUIRE(run.reports.size() == 4);
  CHECK_FALSE(run.reports[3].conformant);
  CHECK(run.reports[3].report.findings().at(0).path == "/release_date");
  CHECK(std::filesystem::exists(out / "records" / "0003.json"));
  CHECK(std::filesystem::exists(out / "reports" / "0003.json"));
  CHECK(std::filesystem::exists(out / "run.json"));
  REQUIRE(run.emitted_graph);
  const auto graph = apkit::testing::read_text(*run.emitted_graph);
  CHECK(graph.find("https://example.org/harvest/dataset-3") != std::string::npos);
  CHECK(graph.find("https://example.org/harvest/dataset-4") == std::string::npos);
  CHECK(graph.find("_:b") == std::string::npos);
}

TEST_CASE("an empty catalog") {
  MockCatalogServer server;
  server.serve("empty.json", "[]");
  const auto out = apkit::testing::scratch_dir("harvest-empty");
  const auto run = harvest(source_for(server.url("empty.json")), out, fast());
  CHECK(run.pages == 1);
  CHECK(run.fetched == 0);
  CHECK(run.reports.empty());
  CHECK(apkit::testing::read_text(out / "graph.nt").empty());
}

TEST_CASE("pagination follows relative and absolute next links") {
  MockCatalogServer server;
  server.serve("a.json", page(dataset(1) + "," + dataset(2), "b.json"));
  server.serve("b.json", page(dataset(3) + "," + dataset(4), server.url("a.json")));
  const auto run = harvest(source_for(server.url("a.json")), apkit::testing::scratch_dir("harvest-pages"), fast());
  CHECK(run.pages == 2);
  CHECK(run.fetched == 4);
  CHECK(run.conformant == 4);
}

TEST_CASE("non-object records are counted as malformed") {
  MockCatalogServer server;
  server.serve("mixed.json", "[" + dataset(1) + R"(, 42, "text"])");
  const auto run = harvest(source_for(server.url("mixed.json")), apkit::testing::scratch_dir("harvest-mixed"), fast());
  CHECK(run.fetched == 3);
  CHECK(run.malformed == 2);
  CHECK(run.conformant == 1);
  CHECK(run.reports[1].report.findings().at(0).rule == "MALFORMED_PAYLOAD");
}

TEST_CASE("unexpected payload shapes are rejected") {
  MockCatalogServer server;
  server.serve("object.json", R"({"records": []})");
  server.serve("broken.json", "{");
  const auto out = apkit::testing::scratch_dir("harvest-bad");
  CHECK(code_of([&] { harvest(source_for(server.url("object.json")), out, fast()); }) == ErrorCode::kMalformedPayload);
  CHECK(code_of([&] { harvest(source_for(server.url("broken.json")), out, fast()); }) == ErrorCode::kMalformedPayload);
}

TEST_CASE("transient server errors are retried") {
  MockCatalogServer server;
  server.serve("a.json", page(dataset(1)));
  server.fail_next(2);
  const auto run = harvest(source_for(server.url("a.json")), apkit::testing::scratch_dir("harvest-retry"), fast());
  CHECK(run.fetched == 1);
  CHECK(server.requests() == 3);
}

TEST_CASE("persistent failures raise NETWORK") {
  MockCatalogServer server;
  server.serve("a.json", page(dataset(1)));
  server.fail_next(3);
  const auto out = apkit::testing::scratch_dir("harvest-down");
  CHECK(code_of([&] { harvest(source_for(server.url("a.json")), out, fast()); }) == ErrorCode::kNetwork);
  CHECK(server.requests() == 3);
  CHECK(code_of([&] { harvest(source_for(server.url("missing.json")), out, fast()); }) == ErrorCode::kNetwork);
}

TEST_CASE("the page cap truncates the run") {
  MockCatalogServer server;
  for (int i = 0; i < 5; ++i) {
    server.serve("p" + std::to_string(i) + ".json", page(dataset(i), "p" + std::to_string(i + 1) + ".json"));
  }
  auto source = source_for(server.url("p0.json"));
  source.page_cap = 3;
  const auto run = harvest(source, apkit::testing::scratch_dir("harvest-cap"), fast());
  CHECK(run.pages == 3);
  CHECK(run.truncated);
  CHECK(run.to_json().at("truncated") == true);
}

TEST_CASE("an unknown root class fails before fetching") {
  MockCatalogServer server;
  auto source = source_for(server.url("a.json"));
  source.root_class = "Nope";
  CHECK(code_of([&] { harvest(source, apkit::testing::scratch_dir("harvest-root"), fast()); }) ==
        ErrorCode::kUnknownRootClass);
  CHECK(server.requests() == 0);
}

TEST_CASE("proxy selection from the environment") {
  {
    EnvGuard env({});
    CHECK_FALSE(proxy_for("http://example.org/a"));
  }
  {
    EnvGuard env({{"http_proxy", "proxy.local:3128"}, {"HTTPS_PROXY", "http://secure.local:8443"}});
    CHECK(proxy_for("http://example.org/a") == std::make_pair(std::string("proxy.local"), 3128));
    CHECK(proxy_for("https://example.org/a") == std::make_pair(std::string("secure.local"), 8443));
    CHECK_FALSE(proxy_for("http://127.0.0.1:9/a"));
    CHECK_FALSE(proxy_for("http://localhost/a"));
  }
  {
    EnvGuard env({{"HTTP_PROXY", "http://proxy.local:3128"}, {"NO_PROXY", "internal.example, .corp.example"}});
    CHECK_FALSE(proxy_for("http://internal.example/a"));
    CHECK_FALSE(proxy_for("http://a.internal.example/a"));
    CHECK_FALSE(proxy_for("http://x.corp.example/a"));
    CHECK(proxy_for("http://notinternal.example/a"));
  }
  {
    EnvGuard env({{"HTTP_PROXY", "http://proxy.local:3128"}, {"no_proxy", "*"}});
    CHECK_FALSE(proxy_for("http://example.org/a"));
  }
}

TEST_CASE("source configs resolve the profile next to the file") {
  const auto source = load_source(apkit::testing::fixture("harvest/source.yaml"));
  CHECK(source.name == "mock-chem-catalog");
  CHECK(source.root_class == "Dataset");
  CHECK(source.page_cap == 100);
  CHECK(std::filesystem::exists(source.profile));
  const auto dir = apkit::testing::scratch_dir("harvest-config");
  apkit::testing::write_text(dir / "bad.yaml", "name: x\n");
  CHECK(code_of([&] { load_source(dir / "bad.yaml"); }) == ErrorCode::kMalformedInstance);
  CHECK(code_of([&] { load_source(dir / "absent.yaml"); }) == ErrorCode::kIo);
}
