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

#include "apkit/jsonld.hpp"

#include <algorithm>
#include <array>

#include "apkit/error.hpp"

namespace apkit::jsonld {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::array<std::string_view, 9> kKnownSchemes = {"http", "https", "urn", "mailto", "tag",
                                                           "file", "ftp", "did", "data"};

bool is_keyword(std::string_view key) { return !key.empty() && key.front() == '@'; }

using RemoteResolver = std::function<std::optional<ojson>(const std::string&)>;

struct Reader {
  RemoteResolver resolve_remote;
  std::vector<std::string>& warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }

  Value scalar(const ojson& value, const Context& ctx, const Context::Term* term) {
    Value out;
    if (value.is_string()) {
      out.text = value.get<std::string>();
      if (term != nullptr && term->coerce_iri) {
        out.kind = Value::Kind::kIri;
        out.text = ctx.expand_iri(out.text, false);
        return out;
      }
      out.literal = value;
      try {
        out.as_iri = ctx.expand_iri(out.text, true);
      } catch (const Error&) {
      }
      return out;
    }
    out.literal = value;
    out.text = value.dump();
    return out;
  }

  std::vector<Value> values(const ojson& value, const Context& ctx, const Context::Term* term) {
    std::vector<Value> out;
    if (value.is_null()) {
      return out;
    }
    if (value.is_array()) {
      if (term != nullptr && term->list_container) {
        Value list;
        list.kind = Value::Kind::kList;
        for (const auto& item : value) {
          auto expanded = values(item, ctx, nullptr);
          list.list.insert(list.list.end(), expanded.begin(), expanded.end());
        }
        out.push_back(std::move(list));
        return out;
      }
      for (const auto& item : value) {
        auto expanded = values(item, ctx, term);
        out.insert(out.end(), expanded.begin(), expanded.end());
      }
      return out;
    }
    if (!value.is_object()) {
      out.push_back(scalar(value, ctx, term));
      return out;
    }
    if (value.contains("@value")) {
      Value literal = scalar(value.at("@value"), ctx, nullptr);
      if (value.contains("@language") && value.at("@language").is_string()) {
        literal.language = value.at("@language").get<std::string>();
      }
      out.push_back(std::move(literal));
      return out;
    }
    if (value.contains("@list")) {
      Value list;
      list.kind = Value::Kind::kList;
      list.list = values(value.at("@list"), ctx, nullptr);
      out.push_back(std::move(list));
      return out;
    }
    if (value.contains("@set")) {
      return values(value.at("@set"), ctx, term);
    }
    const bool reference_only = value.size() == 1 && value.contains("@id");
    if (reference_only) {
      Value ref;
      ref.kind = Value::Kind::kIri;
      ref.text = expand_id(value.at("@id"), ctx);
      out.push_back(std::move(ref));
      return out;
    }
    Value nested;
    nested.kind = Value::Kind::kObject;
    nested.object = object(value, ctx);
    out.push_back(std::move(nested));
    return out;
  }

  std::string expand_id(const ojson& id, const Context& ctx) {
    if (!id.is_string()) {
      throw Error(ErrorCode::kMalformedJson, "@id must be a string");
    }
    const auto text = id.get<std::string>();
    if (text.starts_with("_:")) {
      return text;
    }
    try {
      return ctx.expand_iri(text, false);
    } catch (const Error&) {
      if (text.find(':') != std::string::npos) {
        throw;
      }
      warn("relative @id '" + text + "' kept as written");
      return text;
    }
  }

  std::shared_ptr<Object> object(const ojson& node, const Context& outer) {
    Context ctx = outer;
    if (node.contains("@context")) {
      ctx.apply(node.at("@context"), resolve_remote, warnings);
    }
    auto out = std::make_shared<Object>();
    for (const auto& [key, value] : node.items()) {
      if (key == "@context") {
        continue;
      }
      if (key == "@id") {
        out->id = expand_id(value, ctx);
        continue;
      }
      if (key == "@type") {
        const auto types = value.is_array() ? value : ojson::array({value});
        for (const auto& type : types) {
          if (type.is_string()) out->types.push_back(ctx.expand_iri(type.get<std::string>(), true));
        }
        continue;
      }
      if (key == "@graph") {
        warn("nested @graph is not supported and was ignored");
        continue;
      }
      if (is_keyword(key)) {
        warn("unsupported JSON-LD keyword '" + key + "' was ignored");
        continue;
      }
      const auto iri = ctx.expand_key(key);
      if (!iri) {
        warn("undefined term '" + key + "' was dropped");
        continue;
      }
      auto expanded = values(value, ctx, ctx.term(key));
      auto existing = std::find_if(out->properties.begin(), out->properties.end(),
                                   [&](const auto& entry) { return entry.first == *iri; });
      if (existing == out->properties.end()) {
        out->properties.emplace_back(*iri, std::move(expanded));
      } else {
        existing->second.insert(existing->second.end(), expanded.begin(), expanded.end());
      }
    }
    return out;
  }
};

}  // namespace

void Context::apply(const ojson& ctx, const RemoteResolver& resolve_remote, std::vector<std::string>& warnings) {
  if (ctx.is_null()) {
    *this = Context{};
    return;
  }
  if (ctx.is_array()) {
    for (const auto& entry : ctx) apply(entry, resolve_remote, warnings);
    return;
  }
  if (ctx.is_string()) {
    const auto iri = ctx.get<std::string>();
    auto resolved = resolve_remote ? resolve_remote(iri) : std::nullopt;
    if (!resolved) {
      throw Error(ErrorCode::kMissingContext, "remote context <" + iri + "> is not available; supply a local override");
    }
    apply(resolved->contains("@context") ? resolved->at("@context") : *resolved, nullptr, warnings);
    return;
  }
  if (!ctx.is_object()) {
    throw Error(ErrorCode::kMalformedJson, "@context must be an object, string or array");
  }
  for (const auto& [key, value] : ctx.items()) {
    if (key == "@vocab") {
      if (value.is_string()) vocab_ = value.get<std::string>();
      continue;
    }
    if (key == "@base") {
      if (value.is_string()) base_ = value.get<std::string>();
      continue;
    }
    if (key == "@version" || key == "@language" || key == "@protected") {
      continue;
    }
    if (is_keyword(key)) {
      warnings.push_back("unsupported context keyword '" + key + "' was ignored");
      continue;
    }
    if (value.is_null()) {
      terms_.erase(key);
      prefixes_.erase(key);
      continue;
    }
    if (value.is_string()) {
      const auto iri = value.get<std::string>();
      const auto last = iri.empty() ? '\0' : iri.back();
      if (last == '/' || last == '#' || last == ':' || last == '_') {
        prefixes_[key] = iri;
      } else {
        terms_[key] = Term{expand_iri(iri, false), false, false};
      }
      continue;
    }
    if (value.is_object()) {
      Term term;
      const auto id = value.contains("@id") ? value.at("@id").get<std::string>() : key;
      term.iri = expand_iri(id, true);
      if (value.contains("@type") && value.at("@type").is_string()) {
        const auto type = value.at("@type").get<std::string>();
        term.coerce_iri = type == "@id" || type == "@vocab";
      }
      if (value.contains("@container")) {
        const auto& container = value.at("@container");
        term.list_container = container == "@list" || (container.is_array() && std::find(container.begin(), container.end(), "@list") != container.end());
      }
      if (value.contains("@reverse")) {
        warnings.push_back("reverse term '" + key + "' is not supported and was ignored");
        continue;
      }
      if (value.value("@prefix", false)) {
        prefixes_[key] = term.iri;
      }
      terms_[key] = std::move(term);
      continue;
    }
    throw Error(ErrorCode::kMalformedJson, "invalid context entry for '" + key + "'");
  }
}

const Context::Term* Context::term(std::string_view key) const {
  const auto it = terms_.find(std::string(key));
  return it == terms_.end() ? nullptr : &it->second;
}

std::optional<std::string> Context::expand_key(std::string_view key) const {
  if (const auto* t = term(key)) {
    return t->iri;
  }
  if (key.find(':') != std::string_view::npos) {
    return expand_iri(key, false);
  }
  if (vocab_) {
    return *vocab_ + std::string(key);
  }
  return std::nullopt;
}

std::string Context::expand_iri(std::string_view value, bool vocab_relative) const {
  if (value.starts_with("_:")) {
    return std::string(value);
  }
  if (vocab_relative) {
    if (const auto* t = term(value)) return t->iri;
  }
  const auto colon = value.find(':');
  if (colon != std::string_view::npos) {
    const auto prefix = std::string(value.substr(0, colon));
    const auto rest = value.substr(colon + 1);
    if (rest.starts_with("//")) {
      return std::string(value);
    }
    if (const auto it = prefixes_.find(prefix); it != prefixes_.end()) {
      return it->second + std::string(rest);
    }
    if (const auto* t = term(prefix)) {
      return t->iri + std::string(rest);
    }
    if (const auto it = builtin_prefixes().find(prefix); it != builtin_prefixes().end()) {
      return it->second + std::string(rest);
    }
    if (std::find(kKnownSchemes.begin(), kKnownSchemes.end(), prefix) != kKnownSchemes.end()) {
      return std::string(value);
    }
    throw Error(ErrorCode::kMissingContext, "no prefix definition for compact IRI '" + std::string(value) + "'");
  }
  if (vocab_relative && vocab_) {
    return *vocab_ + std::string(value);
  }
  if (!vocab_relative && base_) {
    return *base_ + std::string(value);
  }
  throw Error(ErrorCode::kMissingContext, "cannot resolve relative IRI '" + std::string(value) + "'");
}

const std::vector<Value>* Object::get(std::string_view iri) const {
  for (const auto& [key, values] : properties) {
    if (key == iri) return &values;
  }
  return nullptr;
}

Document read(std::string_view text, const ReadOptions& options) {
  ojson doc;
  try {
    doc = ojson::parse(text.begin(), text.end());
  } catch (const ojson::parse_error& e) {
    throw Error(ErrorCode::kMalformedJson, e.what());
  }
  Document out;
  Reader reader{[&](const std::string&) -> std::optional<ojson> { return options.context_override; }, out.warnings};
  Context ctx;
  const ojson* nodes = &doc;
  ojson single;
  if (doc.is_object()) {
    if (doc.contains("@context")) {
      ctx.apply(doc.at("@context"), reader.resolve_remote, out.warnings);
    }
    if (doc.contains("@graph")) {
      nodes = &doc.at("@graph");
    } else {
      ojson copy = doc;
      copy.erase("@context");
      single = ojson::array({copy});
      nodes = &single;
    }
  } else if (!doc.is_array()) {
    throw Error(ErrorCode::kMalformedJson, "top-level JSON-LD value must be an object or array");
  }
  if (!nodes->is_array()) {
    throw Error(ErrorCode::kMalformedJson, "@graph must be an array");
  }
  for (const auto& node : *nodes) {
    if (!node.is_object()) {
      out.warnings.push_back("non-object entry in @graph was ignored");
      continue;
    }
    out.nodes.push_back(reader.object(node, ctx));
  }
  out.prefixes = ctx.prefixes();
  return out;
}

}  // namespace apkit::jsonld
