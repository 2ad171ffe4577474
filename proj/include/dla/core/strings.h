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

// Bridges between std::string_view and absl::string_view, which are distinct
// types in the Abseil build this project targets.

#ifndef DLA_CORE_STRINGS_H_
#define DLA_CORE_STRINGS_H_

#include <string_view>

#include "absl/strings/string_view.h"

namespace dla {

inline absl::string_view ToAbsl(std::string_view s) {
  return absl::string_view(s.data(), s.size());
}

inline std::string_view ToStd(absl::string_view s) {
  return std::string_view(s.data(), s.size());
}

// ASCII case-insensitive substring test.
bool ContainsIgnoreCase(std::string_view haystack, std::string_view needle);

}  // namespace dla

#endif  // DLA_CORE_STRINGS_H_
