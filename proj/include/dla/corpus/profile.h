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

#ifndef DLA_CORPUS_PROFILE_H_
#define DLA_CORPUS_PROFILE_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace dla::corpus {

struct FetchConfig {
  bool enabled = false;
  // URL templates; "{n}" expands to 1..max_documents.
  std::vector<std::string> urls;
  int max_documents = 0;
  double rate_limit_seconds = 1.0;
  int max_retries = 3;
  double backoff_seconds = 2.0;

  friend bool operator==(const FetchConfig&, const FetchConfig&) = default;
};

struct SourceProfile {
  std::string source_id;
  std::string name;
  std::vector<std::string> languages;
  // Paths relative to the source directory.
  std::string ruleset_path = "rules.txt";
  std::string fonts_path = "fonts.tsv";
  std::string model_path = "model.txt";
  // Documents dated before this year are filtered at ingestion.
  int min_year = 2014;
  bool reconstruct_words = false;
  double gap_factor = 0.6;
  FetchConfig fetch;

  friend bool operator==(const SourceProfile&, const SourceProfile&) = default;
};

// Validates ids (lowercase letters, digits, '-' and '_') and the fetch rate
// limit (at least one second).
absl::Status ValidateProfile(const SourceProfile& p);

absl::StatusOr<SourceProfile> ParseProfile(std::string_view toml);
std::string SerializeProfile(const SourceProfile& p);

}  // namespace dla::corpus

#endif  // DLA_CORPUS_PROFILE_H_
