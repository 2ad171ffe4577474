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

#include "src/pdf/lexer.h"

#include <cstdlib>

#include "dla/pdf/errors.h"

namespace dla::pdf {
namespace {

constexpr int kMaxNesting = 256;

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

void Lexer::SkipWhitespace() {
  while (pos_ < data_.size()) {
    const char c = data_[pos_];
    if (IsPdfWhitespace(c)) {
      ++pos_;
    } else if (c == '%') {
      while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') {
        ++pos_;
      }
    } else {
      break;
    }
  }
}

absl::StatusOr<Token> Lexer::Next() {
  SkipWhitespace();
  Token tok;
  tok.offset = pos_;
  if (pos_ >= data_.size()) return tok;
  const size_t start = pos_;
  const char c = data_[pos_];
  switch (c) {
    case '(':
      return LexLiteralString(start);
    case '<':
      if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') {
        pos_ += 2;
        tok.kind = Token::Kind::kDictBegin;
        return tok;
      }
      return LexHexString(start);
    case '>':
      if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '>') {
        pos_ += 2;
        tok.kind = Token::Kind::kDictEnd;
        return tok;
      }
      ++pos_;
      return MalformedPdfError(start, "stray '>'");
    case '[':
      ++pos_;
      tok.kind = Token::Kind::kArrayBegin;
      return tok;
    case ']':
      ++pos_;
      tok.kind = Token::Kind::kArrayEnd;
      return tok;
    case '{':
    case '}':
      ++pos_;
      tok.kind = Token::Kind::kKeyword;
      tok.text = std::string(1, c);
      return tok;
    case '/':
      return LexName(start);
    case ')':
      ++pos_;
      return MalformedPdfError(start, "unbalanced ')'");
    default:
      return LexNumberOrKeyword(start);
  }
}

absl::StatusOr<Token> Lexer::LexLiteralString(size_t start) {
  Token tok;
  tok.kind = Token::Kind::kString;
  tok.offset = start;
  ++pos_;  // '('
  int depth = 1;
  std::string& out = tok.text;
  while (pos_ < data_.size()) {
    char c = data_[pos_++];
    if (c == '(') {
      ++depth;
      out.push_back(c);
    } else if (c == ')') {
      if (--depth == 0) return tok;
      out.push_back(c);
    } else if (c == '\\') {
      if (pos_ >= data_.size()) break;
      c = data_[pos_++];
      switch (c) {
        case 'n':
          out.push_back('\n');
          break;
        case 'r':
          out.push_back('\r');
          break;
        case 't':
          out.push_back('\t');
          break;
        case 'b':
          out.push_back('\b');
          break;
        case 'f':
          out.push_back('\f');
          break;
        case '\r':
          if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
          break;
        case '\n':
          break;
        default:
          if (c >= '0' && c <= '7') {
            int value = c - '0';
            for (int k = 0; k < 2 && pos_ < data_.size() &&
                            data_[pos_] >= '0' && data_[pos_] <= '7';
                 ++k) {
              value = value * 8 + (data_[pos_++] - '0');
            }
            out.push_back(static_cast<char>(value & 0xFF));
          } else {
            out.push_back(c);
          }
      }
    } else if (c == '\r') {
      if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
      out.push_back('\n');
    } else {
      out.push_back(c);
    }
  }
  return MalformedPdfError(start, "unterminated string");
}

absl::StatusOr<Token> Lexer::LexHexString(size_t start) {
  Token tok;
  tok.kind = Token::Kind::kString;
  tok.offset = start;
  ++pos_;  // '<'
  int pending = -1;
  while (pos_ < data_.size()) {
    const char c = data_[pos_++];
    if (c == '>') {
      if (pending >= 0) tok.text.push_back(static_cast<char>(pending << 4));
      return tok;
    }
    if (IsPdfWhitespace(c)) continue;
    const int v = HexValue(c);
    if (v < 0) return MalformedPdfError(pos_ - 1, "bad hex string digit");
    if (pending < 0) {
      pending = v;
    } else {
      tok.text.push_back(static_cast<char>((pending << 4) | v));
      pending = -1;
    }
  }
  return MalformedPdfError(start, "unterminated hex string");
}

Token Lexer::LexName(size_t start) {
  Token tok;
  tok.kind = Token::Kind::kName;
  tok.offset = start;
  ++pos_;  // '/'
  while (pos_ < data_.size()) {
    const char c = data_[pos_];
    if (IsPdfWhitespace(c) || IsPdfDelimiter(c)) break;
    ++pos_;
    if (c == '#' && pos_ + 1 < data_.size() && HexValue(data_[pos_]) >= 0 &&
        HexValue(data_[pos_ + 1]) >= 0) {
      tok.text.push_back(static_cast<char>(HexValue(data_[pos_]) * 16 +
                                           HexValue(data_[pos_ + 1])));
      pos_ += 2;
    } else {
      tok.text.push_back(c);
    }
  }
  return tok;
}

Token Lexer::LexNumberOrKeyword(size_t start) {
  while (pos_ < data_.size() && !IsPdfWhitespace(data_[pos_]) &&
         !IsPdfDelimiter(data_[pos_])) {
    ++pos_;
  }
  if (pos_ == start) ++pos_;  // Always make progress.
  Token tok;
  tok.offset = start;
  tok.text = std::string(data_.substr(start, pos_ - start));
  const std::string& s = tok.text;
  bool numeric = !s.empty();
  bool seen_digit = false;
  bool seen_dot = false;
  for (size_t i = 0; i < s.size() && numeric; ++i) {
    const char c = s[i];
    if (c >= '0' && c <= '9') {
      seen_digit = true;
    } else if (c == '.') {
      // Tolerate producers that emit stray extra dots.
      seen_dot = true;
    } else if ((c == '-' || c == '+') && i == 0) {
    } else if (c == '-' && i > 0 && !seen_digit) {
      // "--5" appears in the wild; treat as a single minus.
    } else {
      numeric = false;
    }
  }
  if (!numeric || !seen_digit) {
    tok.kind = Token::Kind::kKeyword;
    return tok;
  }
  std::string cleaned;
  bool sign_done = false;
  bool dot_done = false;
  for (char c : s) {
    if (c == '-' || c == '+') {
      if (!sign_done && cleaned.empty()) cleaned.push_back(c);
      sign_done = true;
    } else if (c == '.') {
      if (!dot_done) cleaned.push_back(c);
      dot_done = true;
    } else {
      cleaned.push_back(c);
    }
  }
  if (!seen_dot) {
    tok.kind = Token::Kind::kInteger;
    tok.integer = std::strtoll(cleaned.c_str(), nullptr, 10);
    tok.real = static_cast<double>(tok.integer);
  } else {
    tok.kind = Token::Kind::kReal;
    tok.real = std::strtod(cleaned.c_str(), nullptr);
  }
  return tok;
}

absl::StatusOr<Object> ObjectParser::ParseObject() {
  auto tok = lexer_.Next();
  if (!tok.ok()) return tok.status();
  return ParseObjectFrom(*tok, 0);
}

absl::StatusOr<Object> ObjectParser::ParseObjectFrom(const Token& tok,
                                                     int depth) {
  if (depth > kMaxNesting) {
    return MalformedPdfError(tok.offset, "objects nested too deeply");
  }
  switch (tok.kind) {
    case Token::Kind::kEof:
      return MalformedPdfError(tok.offset, "unexpected end of data");
    case Token::Kind::kInteger: {
      const size_t save = lexer_.pos();
      auto gen = lexer_.Next();
      if (gen.ok() && gen->kind == Token::Kind::kInteger) {
        auto r = lexer_.Next();
        if (r.ok() && r->IsKeyword("R")) {
          return Object(ObjRef{static_cast<int>(tok.integer),
                               static_cast<int>(gen->integer)});
        }
      }
      lexer_.set_pos(save);
      return Object(tok.integer);
    }
    case Token::Kind::kReal:
      return Object(tok.real);
    case Token::Kind::kString:
      return Object(tok.text);
    case Token::Kind::kName:
      return Object(Name{tok.text});
    case Token::Kind::kArrayBegin:
      return ParseArray(depth + 1);
    case Token::Kind::kDictBegin:
      return ParseDict(depth + 1);
    case Token::Kind::kKeyword:
      if (tok.text == "true") return Object(true);
      if (tok.text == "false") return Object(false);
      if (tok.text == "null") return Object();
      return MalformedPdfError(tok.offset,
                               "unexpected keyword '" + tok.text + "'");
    case Token::Kind::kArrayEnd:
    case Token::Kind::kDictEnd:
      return MalformedPdfError(tok.offset, "unexpected closing delimiter");
  }
  return MalformedPdfError(tok.offset, "unreachable token");
}

absl::StatusOr<Object> ObjectParser::ParseArray(int depth) {
  Array items;
  while (true) {
    auto tok = lexer_.Next();
    if (!tok.ok()) return tok.status();
    if (tok->kind == Token::Kind::kArrayEnd) break;
    if (tok->kind == Token::Kind::kEof) {
      return MalformedPdfError(tok->offset, "unterminated array");
    }
    auto item = ParseObjectFrom(*tok, depth);
    if (!item.ok()) return item.status();
    items.push_back(*std::move(item));
  }
  return Object(std::move(items));
}

absl::StatusOr<Object> ObjectParser::ParseDict(int depth) {
  Dict dict;
  while (true) {
    auto tok = lexer_.Next();
    if (!tok.ok()) return tok.status();
    if (tok->kind == Token::Kind::kDictEnd) break;
    if (tok->kind != Token::Kind::kName) {
      return MalformedPdfError(tok->offset, "dictionary key is not a name");
    }
    auto value_tok = lexer_.Next();
    if (!value_tok.ok()) return value_tok.status();
    if (value_tok->kind == Token::Kind::kDictEnd) {
      // A key without value; treat as null and stop.
      dict.emplace(tok->text, Object());
      break;
    }
    auto value = ParseObjectFrom(*value_tok, depth);
    if (!value.ok()) return value.status();
    dict.insert_or_assign(tok->text, *std::move(value));
  }
  return Object(std::move(dict));
}

}  // namespace dla::pdf
