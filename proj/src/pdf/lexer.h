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

// Tokenizer and object parser shared by the file-structure reader and the
// content-stream interpreter.

#ifndef DLA_SRC_PDF_LEXER_H_
#define DLA_SRC_PDF_LEXER_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "dla/pdf/object.h"

namespace dla::pdf {

inline bool IsPdfWhitespace(char c) {
  return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\f' ||
         c == '\0';
}

inline bool IsPdfDelimiter(char c) {
  return c == '(' || c == ')' || c == '<' || c == '>' || c == '[' ||
         c == ']' || c == '{' || c == '}' || c == '/' || c == '%';
}

struct Token {
  enum class Kind {
    kEof,
    kInteger,
    kReal,
    kString,
    kName,
    kArrayBegin,
    kArrayEnd,
    kDictBegin,
    kDictEnd,
    kKeyword,
  };
  Kind kind = Kind::kEof;
  std::string text;  // Decoded bytes for strings/names, raw for keywords.
  int64_t integer = 0;
  double real = 0.0;
  size_t offset = 0;

  bool IsKeyword(std::string_view k) const {
    return kind == Kind::kKeyword && text == k;
  }
};

class Lexer {
 public:
  explicit Lexer(std::string_view data, size_t pos = 0)
      : data_(data), pos_(pos) {}

  absl::StatusOr<Token> Next();
  void SkipWhitespace();

  size_t pos() const { return pos_; }
  void set_pos(size_t pos) { pos_ = pos; }
  std::string_view data() const { return data_; }
  bool AtEnd() const { return pos_ >= data_.size(); }

 private:
  absl::StatusOr<Token> LexLiteralString(size_t start);
  absl::StatusOr<Token> LexHexString(size_t start);
  Token LexName(size_t start);
  Token LexNumberOrKeyword(size_t start);

  std::string_view data_;
  size_t pos_;
};

// Parses complete objects, resolving the `N G R` reference syntax.
class ObjectParser {
 public:
  explicit ObjectParser(std::string_view data, size_t pos = 0)
      : lexer_(data, pos) {}

  absl::StatusOr<Object> ParseObject();
  // Parses an object whose first token has already been read.
  absl::StatusOr<Object> ParseObjectFrom(const Token& first, int depth = 0);

  Lexer& lexer() { return lexer_; }

 private:
  absl::StatusOr<Object> ParseArray(int depth);
  absl::StatusOr<Object> ParseDict(int depth);

  Lexer lexer_;
};

}  // namespace dla::pdf

#endif  // DLA_SRC_PDF_LEXER_H_
