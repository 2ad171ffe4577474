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

#ifndef DLA_CORE_UTF8_H_
#define DLA_CORE_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dla::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at `*pos` and advances it. Invalid
// sequences decode to U+FFFD and consume one byte.
char32_t DecodeNext(std::string_view s, size_t* pos);

std::u32string Decode(std::string_view s);

void Append(char32_t cp, std::string* out);
std::string Encode(std::u32string_view s);

// Latin-script classification; covers ASCII, Latin-1 and Latin Extended-A,
// which is enough for the Iberian languages.
bool IsLetter(char32_t cp);
bool IsUpper(char32_t cp);
char32_t ToLower(char32_t cp);

bool IsSpace(char32_t cp);

// Splits on runs of ASCII space (the only token separator after text
// preprocessing).
std::vector<std::string_view> SplitTokens(std::string_view s);

}  // namespace dla::utf8

#endif  // DLA_CORE_UTF8_H_
