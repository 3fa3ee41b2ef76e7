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

#include "apkit/lexical.hpp"

#include <array>
#include <cctype>
#include <regex>
#include <string>

#include "apkit/error.hpp"
#include "apkit/iri.hpp"

namespace apkit {

namespace {

struct RuleName {
  LexicalRule rule;
  std::string_view id;
};

constexpr std::array<RuleName, 10> kRuleNames = {{
    {LexicalRule::kString, "STRING"},
    {LexicalRule::kDate, "DATE"},
    {LexicalRule::kDateTime, "DATETIME"},
    {LexicalRule::kDuration, "DURATION"},
    {LexicalRule::kDecimal, "DECIMAL"},
    {LexicalRule::kInteger, "INTEGER"},
    {LexicalRule::kBoolean, "BOOLEAN"},
    {LexicalRule::kAnyUri, "ANYURI"},
    {LexicalRule::kInchiKey, "INCHIKEY"},
    {LexicalRule::kSmilesNonempty, "SMILES_NONEMPTY"},
}};

constexpr std::string_view kInchiKeyPattern = "^[A-Z]{14}-[A-Z]{10}-[A-Z]$";
constexpr std::string_view kSmilesPattern = "^\\S+$";

bool digits(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (const char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  for (const char c : s) {
    v = v * 10 + (c - '0');
  }
  return v;
}

bool leap_year(long year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

int days_in_month(long year, int month) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return month == 2 && leap_year(year) ? 29 : kDays[static_cast<std::size_t>(month - 1)];
}

// YYYY-MM-DD, four-digit year, real calendar date.
bool valid_calendar_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
    return false;
  }
  const auto y = s.substr(0, 4);
  const auto m = s.substr(5, 2);
  const auto d = s.substr(8, 2);
  if (!digits(y) || !digits(m) || !digits(d)) {
    return false;
  }
  const int month = to_int(m);
  const int day = to_int(d);
  if (month < 1 || month > 12 || day < 1) {
    return false;
  }
  return day <= days_in_month(to_int(y), month);
}

bool valid_timezone(std::string_view tz) {
  if (tz.empty() || tz == "Z") {
    return true;
  }
  if (tz.size() != 6 || (tz[0] != '+' && tz[0] != '-') || tz[3] != ':' || !digits(tz.substr(1, 2)) ||
      !digits(tz.substr(4, 2))) {
    return false;
  }
  return to_int(tz.substr(1, 2)) <= 14 && to_int(tz.substr(4, 2)) <= 59;
}

bool valid_date_time(std::string_view s) {
  const auto t = s.find('T');
  if (t != 10 || !valid_calendar_date(s.substr(0, 10))) {
    return false;
  }
  auto rest = s.substr(11);
  if (rest.size() < 8 || rest[2] != ':' || rest[5] != ':' || !digits(rest.substr(0, 2)) ||
      !digits(rest.substr(3, 2)) || !digits(rest.substr(6, 2))) {
    return false;
  }
  const int hour = to_int(rest.substr(0, 2));
  const int minute = to_int(rest.substr(3, 2));
  const int second = to_int(rest.substr(6, 2));
  if (hour > 23 || minute > 59 || second > 59) {
    return false;
  }
  rest.remove_prefix(8);
  if (!rest.empty() && rest[0] == '.') {
    std::size_t n = 1;
    while (n < rest.size() && std::isdigit(static_cast<unsigned char>(rest[n]))) {
      ++n;
    }
    if (n == 1) {
      return false;
    }
    rest.remove_prefix(n);
  }
  return valid_timezone(rest);
}

bool regex_match(std::string_view value, const std::regex& re) {
  return std::regex_match(value.begin(), value.end(), re);
}

}  // namespace

std::string_view to_string(LexicalRule rule) {
  for (const auto& entry : kRuleNames) {
    if (entry.rule == rule) {
      return entry.id;
    }
  }
  return "STRING";
}

LexicalRule lexical_rule_from_string(std::string_view id) {
  for (const auto& entry : kRuleNames) {
    if (entry.id == id) {
      return entry.rule;
    }
  }
  throw Error(ErrorCode::kUnknownRule, "no lexical rule named '" + std::string(id) + "'");
}

bool lexical_check(LexicalRule rule, std::string_view value) {
  static const std::regex kDecimal(R"([+-]?(\d+(\.\d*)?|\.\d+))");
  static const std::regex kInteger(R"([+-]?\d+)");
  static const std::regex kDuration(R"(-?P(?=\d|T\d)(\d+Y)?(\d+M)?(\d+D)?(T(?=\d)(\d+H)?(\d+M)?(\d+(\.\d+)?S)?)?)");
  static const std::regex kInchiKey{std::string(kInchiKeyPattern)};
  switch (rule) {
    case LexicalRule::kString: return true;
    case LexicalRule::kDate: return valid_calendar_date(value);
    case LexicalRule::kDateTime: return valid_date_time(value);
    case LexicalRule::kDuration: return regex_match(value, kDuration);
    case LexicalRule::kDecimal: return regex_match(value, kDecimal);
    case LexicalRule::kInteger: return regex_match(value, kInteger);
    case LexicalRule::kBoolean: return value == "true" || value == "false" || value == "1" || value == "0";
    case LexicalRule::kAnyUri: return is_absolute_iri(value);
    case LexicalRule::kInchiKey: return regex_match(value, kInchiKey);
    case LexicalRule::kSmilesNonempty:
      if (value.empty()) {
        return false;
      }
      for (const char c : value) {
        if (std::isspace(static_cast<unsigned char>(c))) {
          return false;
        }
      }
      return true;
  }
  return false;
}

bool lexical_check(std::string_view rule_id, std::string_view value) {
  return lexical_check(lexical_rule_from_string(rule_id), value);
}

std::optional<LexicalRule> default_rule_for_xsd(std::string_view datatype_iri) {
  if (!datatype_iri.starts_with(ns::kXsd)) {
    return std::nullopt;
  }
  const auto local = datatype_iri.substr(ns::kXsd.size());
  if (local == "string") return LexicalRule::kString;
  if (local == "date") return LexicalRule::kDate;
  if (local == "dateTime") return LexicalRule::kDateTime;
  if (local == "duration") return LexicalRule::kDuration;
  if (local == "decimal") return LexicalRule::kDecimal;
  if (local == "integer") return LexicalRule::kInteger;
  if (local == "boolean") return LexicalRule::kBoolean;
  if (local == "anyURI") return LexicalRule::kAnyUri;
  return std::nullopt;
}

std::optional<std::string_view> string_refinement_pattern(LexicalRule rule) {
  switch (rule) {
    case LexicalRule::kInchiKey: return kInchiKeyPattern;
    case LexicalRule::kSmilesNonempty: return kSmilesPattern;
    default: return std::nullopt;
  }
}

std::optional<LexicalRule> rule_for_pattern(std::string_view pattern) {
  if (pattern == kInchiKeyPattern) return LexicalRule::kInchiKey;
  if (pattern == kSmilesPattern) return LexicalRule::kSmilesNonempty;
  return std::nullopt;
}

}  // namespace apkit
