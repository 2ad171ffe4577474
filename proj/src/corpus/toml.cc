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

#include "dla/corpus/toml.h"

#include <cctype>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "dla/core/strings.h"
#include "dla/core/utf8.h"

namespace dla::corpus {
namespace {

class LineParser {
 public:
  LineParser(std::string_view text, int line) : s_(text), line_(line) {}

  absl::StatusOr<TomlValue> Value() {
    SkipSpace();
    if (pos_ >= s_.size()) return Error("missing value");
    const char c = s_[pos_];
    if (c == '"') {
      auto str = String();
      if (!str.ok()) return str.status();
      return TomlValue{*std::move(str)};
    }
    if (c == '[') {
      ++pos_;
      TomlArray items;
      while (true) {
        SkipSpace();
        if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          break;
        }
        auto item = Value();
        if (!item.ok()) return item.status();
        items.push_back(*std::move(item));
        SkipSpace();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
        } else if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          break;
        } else {
          return Error("unterminated array");
        }
      }
      return TomlValue{std::move(items)};
    }
    size_t end = pos_;
    while (end < s_.size() && s_[end] != ',' && s_[end] != ']' &&
           s_[end] != '#' && !std::isspace(static_cast<unsigned char>(s_[end]))) {
      ++end;
    }
    const std::string_view token = s_.substr(pos_, end - pos_);
    pos_ = end;
    if (token == "true") return TomlValue{true};
    if (token == "false") return TomlValue{false};
    std::string digits;
    for (char ch : token) {
      if (ch != '_') digits.push_back(ch);
    }
    int64_t i = 0;
    if (absl::SimpleAtoi(digits, &i)) return TomlValue{i};
    double d = 0.0;
    if (absl::SimpleAtod(digits, &d)) return TomlValue{d};
    return Error(absl::StrCat("bad value '", ToAbsl(token), "'"));
  }

  // Only whitespace or a comment may follow.
  absl::Status End() {
    SkipSpace();
    if (pos_ < s_.size() && s_[pos_] != '#') {
      return Error("trailing characters").status();
    }
    return absl::OkStatus();
  }

 private:
  void SkipSpace() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  absl::StatusOr<TomlValue> Error(std::string_view what) const {
    return absl::InvalidArgumentError(
        absl::StrCat("toml line ", line_, ": ", ToAbsl(what)));
  }

  absl::StatusOr<std::string> String() {
    ++pos_;  // Opening quote.
    std::string out;
    while (pos_ < s_.size()) {
      const char c = s_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (pos_ >= s_.size()) break;
      const char e = s_[pos_++];
      switch (e) {
        case 'n':
          out.push_back('\n');
          break;
        case 't':
          out.push_back('\t');
          break;
        case 'r':
          out.push_back('\r');
          break;
        case '"':
        case '\\':
          out.push_back(e);
          break;
        case 'u': {
          uint32_t cp = 0;
          if (pos_ + 4 > s_.size()) break;
          for (int k = 0; k < 4; ++k) {
            const char h = s_[pos_++];
            cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(h))
                                ? h - '0'
                                : (std::tolower(h) - 'a' + 10));
          }
          utf8::Append(static_cast<char32_t>(cp), &out);
          break;
        }
        default:
          return Error("bad escape").status();
      }
    }
    return Error("unterminated string").status();
  }

  std::string_view s_;
  size_t pos_ = 0;
  int line_;
};

}  // namespace

absl::StatusOr<TomlDocument> ParseToml(std::string_view text) {
  TomlDocument doc;
  std::string table;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const absl::string_view stripped = absl::StripAsciiWhitespace(ToAbsl(line));
    if (stripped.empty() || stripped[0] == '#') continue;
    if (stripped[0] == '[') {
      const size_t close = stripped.find(']');
      if (close == absl::string_view::npos) {
        return absl::InvalidArgumentError(
            absl::StrCat("toml line ", line_no, ": unterminated table header"));
      }
      table = std::string(
          absl::StripAsciiWhitespace(stripped.substr(1, close - 1)));
      continue;
    }
    const size_t eq = stripped.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("toml line ", line_no, ": expected key = value"));
    }
    const std::string key(absl::StripAsciiWhitespace(stripped.substr(0, eq)));
    if (key.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("toml line ", line_no, ": empty key"));
    }
    LineParser parser(ToStd(stripped.substr(eq + 1)), line_no);
    auto value = parser.Value();
    if (!value.ok()) return value.status();
    if (auto s = parser.End(); !s.ok()) return s;
    const std::string full = table.empty() ? key : absl::StrCat(table, ".", key);
    if (!doc.emplace(full, *std::move(value)).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "toml line ", line_no, ": duplicate key '", full, "'"));
    }
    if (end == text.size()) break;
  }
  return doc;
}

std::string TomlQuote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

}  // namespace dla::corpus
