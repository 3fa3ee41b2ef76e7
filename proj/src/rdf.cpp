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

#include "apkit/rdf.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "apkit/error.hpp"
#include "apkit/validate.hpp"

namespace apkit {

bool TripleSet::add(Triple triple) {
  if (!index_.insert(triple).second) return false;
  triples_.push_back(std::move(triple));
  return true;
}

namespace {

const std::string kXsdString = std::string(ns::kXsd) + "string";

class Emitter {
 public:
  Emitter(const SchemaIR& ir, TripleSet& out) : ir_(ir), out_(out) {}

  Term subject_of(const Node& node) {
    if (const auto* id = node.find("@id"); id != nullptr && id->kind() == Node::Kind::kString) {
      if (id->text().starts_with("_:")) return Term::blank(id->text().substr(2));
      return Term::iri(expand_if_curie(id->text(), ir_.prefix_map));
    }
    return Term::blank("b" + std::to_string(next_blank_++));
  }

  Term node(const Node& value, const RangeSpec& range) {
    const auto subject = subject_of(value);
    const auto class_name = implied_class(ir_, value, range);
    out_.add({subject, Term::iri(std::string(ns::kRdfType)), Term::iri(ir_.classes.at(class_name).class_uri)});
    for (const auto& [key, child] : value.entries()) {
      if (key.starts_with("@")) continue;
      const auto slot = effective_slot(ir_, class_name, key);
      if (!slot) continue;
      const auto predicate = Term::iri(slot->slot_uri);
      auto emit = [&](const Node& item) {
        if (item.kind() == Node::Kind::kNull) return;
        out_.add({subject, predicate, object(item, *slot)});
      };
      if (child.is_list()) {
        for (const auto& item : child.items()) emit(item);
      } else {
        emit(child);
      }
    }
    return subject;
  }

 private:
  Term object(const Node& item, const SlotDef& slot) {
    if (slot.range.is_class_valued()) {
      if (item.is_map()) return node(item, slot.range);
      return Term::iri(expand_if_curie(item.text(), ir_.prefix_map));
    }
    const auto dt = ir_.find_datatype(slot.range.members.front());
    if (dt->lexical_check == LexicalRule::kAnyUri) {
      return Term::iri(expand_if_curie(item.text(), ir_.prefix_map));
    }
    if (dt->base_uri == kXsdString) return Term::literal(item.text());
    return Term::literal(item.text(), dt->base_uri);
  }

  const SchemaIR& ir_;
  TripleSet& out_;
  std::size_t next_blank_ = 0;
};

void escape_iri(std::string& out, std::string_view iri) {
  for (const unsigned char c : iri) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`' ||
        c == '\\') {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\u%04X", c);
      out += buf;
    } else {
      out += static_cast<char>(c);
    }
  }
}

void escape_literal(std::string& out, std::string_view text) {
  for (const unsigned char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04X", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
}

std::string literal_body(const Term& term) {
  std::string out = "\"";
  escape_literal(out, term.value);
  out += "\"";
  return out;
}

class NTriplesParser {
 public:
  explicit NTriplesParser(std::string_view text) : text_(text) {}

  TripleSet parse() {
    TripleSet out;
    while (skip_ws_and_comments()) {
      Triple t;
      t.subject = term();
      if (t.subject.kind == Term::Kind::kLiteral) fail("literal in subject position");
      skip_inline_ws();
      t.predicate = term();
      if (t.predicate.kind != Term::Kind::kIri) fail("predicate must be an IRI");
      skip_inline_ws();
      t.object = term();
      skip_inline_ws();
      expect('.');
      skip_inline_ws();
      if (pos_ < text_.size() && text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      }
      if (pos_ < text_.size() && text_[pos_] != '\n' && text_[pos_] != '\r') fail("expected end of line");
      out.add(std::move(t));
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(std::min(pos_, text_.size())), '\n'));
    throw Error(ErrorCode::kMalformedRdf, "line " + std::to_string(line) + ": " + what);
  }

  bool skip_ws_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        return true;
      }
    }
    return false;
  }

  void skip_inline_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  void unicode_escape(std::string& out, std::size_t digits) {
    if (pos_ + digits > text_.size()) fail("truncated unicode escape");
    const auto hex = std::string(text_.substr(pos_, digits));
    if (hex.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) fail("bad unicode escape");
    append_utf8(out, std::stoul(hex, nullptr, 16));
    pos_ += digits;
  }

  std::string iri_body() {
    expect('<');
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated IRI");
      const char c = text_[pos_++];
      if (c == '>') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("truncated escape");
        const char e = text_[pos_++];
        if (e == 'u') unicode_escape(out, 4);
        else if (e == 'U') unicode_escape(out, 8);
        else fail("bad IRI escape");
        continue;
      }
      if (c == ' ' || c == '\n') fail("whitespace in IRI");
      out += c;
    }
    return out;
  }

  Term term() {
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '<') return Term::iri(iri_body());
    if (c == '_') {
      pos_++;
      expect(':');
      const auto start = pos_;
      while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '\t' && text_[pos_] != '\n' && text_[pos_] != '\r') ++pos_;
      auto label = std::string(text_.substr(start, pos_ - start));
      while (!label.empty() && label.back() == '.') {
        label.pop_back();
        --pos_;
      }
      if (label.empty()) fail("empty blank node label");
      return Term::blank(std::move(label));
    }
    if (c == '"') {
      ++pos_;
      std::string value;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated literal");
        const char ch = text_[pos_++];
        if (ch == '"') break;
        if (ch == '\n') fail("newline in literal");
        if (ch == '\\') {
          if (pos_ >= text_.size()) fail("truncated escape");
          const char e = text_[pos_++];
          switch (e) {
            case 't': value += '\t'; break;
            case 'b': value += '\b'; break;
            case 'n': value += '\n'; break;
            case 'r': value += '\r'; break;
            case 'f': value += '\f'; break;
            case '"': value += '"'; break;
            case '\'': value += '\''; break;
            case '\\': value += '\\'; break;
            case 'u': unicode_escape(value, 4); break;
            case 'U': unicode_escape(value, 8); break;
            default: fail("bad literal escape");
          }
          continue;
        }
        value += ch;
      }
      Term t = Term::literal(std::move(value));
      if (pos_ < text_.size() && text_[pos_] == '@') {
        ++pos_;
        const auto start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) ++pos_;
        t.language = std::string(text_.substr(start, pos_ - start));
        if (t.language.empty()) fail("empty language tag");
      } else if (text_.substr(pos_).starts_with("^^")) {
        pos_ += 2;
        t.datatype = iri_body();
        if (t.datatype == kXsdString) t.datatype.clear();
      }
      return t;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string turtle_term(const Term& term, const PrefixMap& prefixes) {
  switch (term.kind) {
    case Term::Kind::kBlank:
      return "_:" + term.value;
    case Term::Kind::kIri:
      if (term.value == ns::kRdfType) return "a";
      if (auto compact = compact_iri(term.value, prefixes)) return *compact;
      return ntriples_term(term);
    case Term::Kind::kLiteral: {
      auto out = literal_body(term);
      if (!term.language.empty()) return out + "@" + term.language;
      if (!term.datatype.empty()) {
        auto compact = compact_iri(term.datatype, prefixes);
        out += "^^" + (compact ? *compact : "<" + term.datatype + ">");
      }
      return out;
    }
  }
  return {};
}

}  // namespace

TripleSet to_triples(const InstanceDocument& doc, const SchemaIR& ir) {
  const auto report = validate(doc, ir);
  if (!report.conformant()) {
    throw Error(ErrorCode::kNotConformant,
                "document '" + doc.source_name + "' is not conformant (" + std::to_string(report.error_count()) + " errors)");
  }
  TripleSet out;
  Emitter emitter(ir, out);
  emitter.node(doc.root, RangeSpec::of_class(doc.root_class));
  return out;
}

std::string ntriples_term(const Term& term) {
  std::string out;
  switch (term.kind) {
    case Term::Kind::kIri:
      out += "<";
      escape_iri(out, term.value);
      out += ">";
      break;
    case Term::Kind::kBlank:
      out += "_:" + term.value;
      break;
    case Term::Kind::kLiteral:
      out += literal_body(term);
      if (!term.language.empty()) {
        out += "@" + term.language;
      } else if (!term.datatype.empty() && term.datatype != kXsdString) {
        out += "^^<";
        escape_iri(out, term.datatype);
        out += ">";
      }
      break;
  }
  return out;
}

std::string to_ntriples(const TripleSet& ts) {
  std::vector<std::string> lines;
  lines.reserve(ts.size());
  for (const auto& t : ts.triples()) {
    lines.push_back(ntriples_term(t.subject) + " " + ntriples_term(t.predicate) + " " + ntriples_term(t.object) + " .\n");
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::string out;
  for (const auto& line : lines) out += line;
  return out;
}

std::string to_turtle(const TripleSet& ts, const PrefixMap& prefixes) {
  std::ostringstream out;
  for (const auto& [prefix, iri] : prefixes) out << "@prefix " << prefix << ": <" << iri << "> .\n";
  std::map<Term, std::map<Term, std::vector<Term>>> grouped;
  for (const auto& t : ts.triples()) grouped[t.subject][t.predicate].push_back(t.object);
  for (auto& [subject, predicates] : grouped) {
    out << "\n" << turtle_term(subject, prefixes);
    bool first_predicate = true;
    // rdf:type first, then predicates in IRI order.
    std::vector<const std::pair<const Term, std::vector<Term>>*> ordered;
    for (const auto& entry : predicates) ordered.push_back(&entry);
    std::stable_partition(ordered.begin(), ordered.end(), [](const auto* e) { return e->first.value == ns::kRdfType; });
    for (const auto* entry : ordered) {
      auto objects = entry->second;
      std::sort(objects.begin(), objects.end());
      out << (first_predicate ? " " : " ;\n    ") << turtle_term(entry->first, prefixes) << " ";
      for (std::size_t i = 0; i < objects.size(); ++i) out << (i ? ", " : "") << turtle_term(objects[i], prefixes);
      first_predicate = false;
    }
    out << " .\n";
  }
  return out.str();
}

std::string serialize(const TripleSet& ts, RdfFormat format, const PrefixMap& prefixes) {
  return format == RdfFormat::kNTriples ? to_ntriples(ts) : to_turtle(ts, prefixes);
}

TripleSet parse_ntriples(std::string_view text) { return NTriplesParser(text).parse(); }

TripleSet materialize_super_properties(const TripleSet& ts, const SchemaIR& ir) {
  std::map<std::string, std::vector<std::string>> supers_by_uri;
  for (const auto& [name, slot] : ir.slots) {
    std::vector<std::string> chain;
    std::set<std::string> seen{name};
    for (auto s = slot.super_slot; s && seen.insert(*s).second; s = ir.slots.at(*s).super_slot) {
      chain.push_back(ir.slots.at(*s).slot_uri);
    }
    if (chain.empty()) continue;
    auto& target = supers_by_uri[slot.slot_uri];
    for (auto& uri : chain) {
      if (std::find(target.begin(), target.end(), uri) == target.end()) target.push_back(std::move(uri));
    }
  }
  TripleSet out = ts;
  for (const auto& t : ts.triples()) {
    const auto it = supers_by_uri.find(t.predicate.value);
    if (it == supers_by_uri.end()) continue;
    for (const auto& uri : it->second) out.add({t.subject, Term::iri(uri), t.object});
  }
  return out;
}

}  // namespace apkit
