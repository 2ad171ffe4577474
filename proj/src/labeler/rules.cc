// Copyright 2026 The DLA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dla/labeler/rules.h"

#include <algorithm>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "dla/core/strings.h"
#include "dla/core/utf8.h"

namespace dla::labeler {
namespace {

using features::FeatureVector;

std::string Lower(std::string_view s) {
  std::string out;
  size_t pos = 0;
  while (pos < s.size()) utf8::Append(utf8::ToLower(utf8::DecodeNext(s, &pos)), &out);
  return out;
}

// Drops non-alphanumeric code points from both ends of a token.
std::string_view TrimPunct(std::string_view t) {
  auto alnum = [](char32_t cp) {
    return utf8::IsLetter(cp) || (cp >= '0' && cp <= '9');
  };
  size_t begin = 0;
  while (begin < t.size()) {
    size_t pos = begin;
    if (alnum(utf8::DecodeNext(t, &pos))) break;
    begin = pos;
  }
  size_t end = begin;
  size_t pos = begin;
  while (pos < t.size()) {
    const char32_t cp = utf8::DecodeNext(t, &pos);
    if (alnum(cp)) end = pos;
  }
  return t.substr(begin, end - begin);
}

absl::Status LineError(int line, std::string_view msg) {
  return absl::InvalidArgumentError(
      absl::StrCat("rules line ", line, ": ", ToAbsl(msg)));
}

// Splits on " AND " outside brackets.
std::vector<std::string> SplitConjunction(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
    if (depth == 0 && s.substr(i, 5) == " AND ") {
      parts.emplace_back(s.substr(start, i - start));
      start = i + 5;
      i += 4;
    }
  }
  parts.emplace_back(s.substr(start));
  return parts;
}

absl::StatusOr<Condition> ParseCondition(std::string_view text, int line) {
  std::string_view s = ToStd(absl::StripAsciiWhitespace(ToAbsl(text)));
  if (s.size() < 2 || (s[0] != 'f' && s[0] != 'F')) {
    return LineError(line, "condition must start with a feature name");
  }
  size_t i = 1;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  int feature = 0;
  if (!absl::SimpleAtoi(ToAbsl(s.substr(1, i - 1)), &feature) || feature < 1 ||
      feature > 18) {
    return LineError(line, "unknown feature");
  }
  std::string_view rest = ToStd(absl::StripAsciiWhitespace(ToAbsl(s.substr(i))));
  Condition c;
  c.feature = feature;
  if (rest.starts_with("CONTAINS_ANY")) {
    if (feature != 12 && feature != 16) {
      return LineError(line, "CONTAINS_ANY applies to f12 and f16 only");
    }
    c.kind = feature == 12 ? Condition::Kind::kKeywords
                           : Condition::Kind::kFonts;
    rest = ToStd(absl::StripAsciiWhitespace(ToAbsl(rest.substr(12))));
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']') {
      return LineError(line, "expected [term, ...]");
    }
    for (absl::string_view term :
         absl::StrSplit(ToAbsl(rest.substr(1, rest.size() - 2)), ',')) {
      const absl::string_view t = absl::StripAsciiWhitespace(term);
      if (!t.empty()) c.terms.push_back(Lower(ToStd(t)));
    }
    if (c.terms.empty()) return LineError(line, "empty term list");
    return c;
  }
  if (feature == 12 || feature == 16) {
    return LineError(line, "f12 and f16 support CONTAINS_ANY only");
  }
  static constexpr std::pair<std::string_view, Condition::Op> kOps[] = {
      {"<=", Condition::Op::kLe}, {">=", Condition::Op::kGe},
      {"==", Condition::Op::kEq}, {"!=", Condition::Op::kNe},
      {"<", Condition::Op::kLt},  {">", Condition::Op::kGt}};
  for (const auto& [token, op] : kOps) {
    if (!rest.starts_with(token)) continue;
    c.kind = Condition::Kind::kNumeric;
    c.op = op;
    const absl::string_view number =
        absl::StripAsciiWhitespace(ToAbsl(rest.substr(token.size())));
    if (!absl::SimpleAtod(number, &c.value)) {
      return LineError(line, "expected a number");
    }
    return c;
  }
  return LineError(line, "expected a comparison or CONTAINS_ANY");
}

std::optional<double> NumericFeature(const FeatureVector& fv, int f) {
  switch (f) {
    case 1: return fv.f1;
    case 2: return fv.f2;
    case 3: return fv.f3;
    case 4: return fv.f4;
    case 5: return fv.f5;
    case 6: return fv.f6;
    case 7: return fv.f7;
    case 8: return fv.f8;
    case 9: return fv.f9;
    case 10: return fv.f10;
    case 11: return fv.f11;
    default: break;
  }
  if (!fv.text) return std::nullopt;
  switch (f) {
    case 13: return fv.text->f13;
    case 14: return fv.text->f14;
    case 15: return fv.text->f15;
    case 17: return fv.text->f17;
    case 18: return fv.text->f18;
    default: return std::nullopt;
  }
}

bool Compare(double a, Condition::Op op, double b) {
  switch (op) {
    case Condition::Op::kLt: return a < b;
    case Condition::Op::kLe: return a <= b;
    case Condition::Op::kGt: return a > b;
    case Condition::Op::kGe: return a >= b;
    case Condition::Op::kEq: return a == b;
    case Condition::Op::kNe: return a != b;
  }
  return false;
}

bool MatchesCondition(const Condition& c, const FeatureVector& fv) {
  switch (c.kind) {
    case Condition::Kind::kNumeric: {
      const auto v = NumericFeature(fv, c.feature);
      return v.has_value() && Compare(*v, c.op, c.value);
    }
    case Condition::Kind::kKeywords: {
      if (!fv.f12) return false;
      const std::string text = Lower(*fv.f12);
      std::vector<std::string_view> tokens;
      for (std::string_view t : utf8::SplitTokens(text)) {
        tokens.push_back(TrimPunct(t));
      }
      for (const std::string& term : c.terms) {
        if (term.find(' ') != std::string::npos) {
          if (text.find(term) != std::string::npos) return true;
        } else if (std::find(tokens.begin(), tokens.end(), term) !=
                   tokens.end()) {
          return true;
        }
      }
      return false;
    }
    case Condition::Kind::kFonts: {
      if (!fv.text) return false;
      for (const std::string& font : fv.text->f16) {
        for (const std::string& term : c.terms) {
          if (ContainsIgnoreCase(font, term)) return true;
        }
      }
      return false;
    }
  }
  return false;
}

}  // namespace

absl::StatusOr<HeuristicRuleSet> ParseRules(std::string_view text) {
  HeuristicRuleSet set;
  int line_no = 0;
  for (absl::string_view raw : absl::StrSplit(ToAbsl(text), '\n')) {
    ++line_no;
    const std::string_view line = ToStd(absl::StripAsciiWhitespace(raw));
    if (line.empty() || line.front() == '#') continue;
    if (line.starts_with("DEFAULT")) {
      auto label = ParseLayoutLabel(
          ToStd(absl::StripAsciiWhitespace(ToAbsl(line.substr(7)))));
      if (!label.ok() || !IsTextLabel(*label)) {
        return LineError(line_no, "DEFAULT needs a text label");
      }
      set.default_label = *label;
      continue;
    }
    if (!line.starts_with("IF ")) return LineError(line_no, "expected IF");
    const size_t then = line.rfind(" THEN ");
    if (then == std::string_view::npos) {
      return LineError(line_no, "missing THEN");
    }
    Rule rule;
    rule.line = line_no;
    auto label = ParseLayoutLabel(
        ToStd(absl::StripAsciiWhitespace(ToAbsl(line.substr(then + 6)))));
    if (!label.ok() || !IsTextLabel(*label)) {
      return LineError(line_no, "THEN needs a text label");
    }
    rule.label = *label;
    for (const std::string& part : SplitConjunction(line.substr(3, then - 3))) {
      auto cond = ParseCondition(part, line_no);
      if (!cond.ok()) return cond.status();
      rule.conditions.push_back(*std::move(cond));
    }
    set.rules.push_back(std::move(rule));
  }
  return set;
}

bool Matches(const Rule& rule, const FeatureVector& fv) {
  return std::all_of(
      rule.conditions.begin(), rule.conditions.end(),
      [&](const Condition& c) { return MatchesCondition(c, fv); });
}

LayoutLabel ApplyRules(const HeuristicRuleSet& rules, const FeatureVector& fv) {
  for (const Rule& rule : rules.rules) {
    if (Matches(rule, fv)) return rule.label;
  }
  return rules.default_label;
}

std::vector<LayoutLabel> ApplyHeuristics(
    const HeuristicRuleSet& rules, std::span<const FeatureVector> blocks) {
  std::vector<LayoutLabel> labels;
  labels.reserve(blocks.size());
  for (const FeatureVector& fv : blocks) {
    labels.push_back(fv.b == BlockKind::kText ? ApplyRules(rules, fv)
                                              : LabelForKind(fv.b));
  }
  return labels;
}

}  // namespace dla::labeler
