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

// A small TOML subset for source profiles: `[table]` headers, `key = value`
// pairs with basic strings, integers, floats, booleans and single-line
// arrays of those, and `#` comments.

#ifndef DLA_CORPUS_TOML_H_
#define DLA_CORPUS_TOML_H_

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"

namespace dla::corpus {

struct TomlValue;
using TomlArray = std::vector<TomlValue>;

struct TomlValue {
  std::variant<std::string, int64_t, double, bool, TomlArray> value;

  friend bool operator==(const TomlValue&, const TomlValue&) = default;
};

// Keys are "table.key" for values under a header, "key" at the top level.
using TomlDocument = std::map<std::string, TomlValue>;

absl::StatusOr<TomlDocument> ParseToml(std::string_view text);

// Quotes and escapes `s` as a TOML basic string.
std::string TomlQuote(std::string_view s);

}  // namespace dla::corpus

#endif  // DLA_CORPUS_TOML_H_
