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

// Corpus statistics and integrity checking.

#ifndef DLA_CORPUS_STATS_H_
#define DLA_CORPUS_STATS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/corpus/store.h"
#include "json.hpp"

namespace dla::corpus {

struct SourceStats {
  std::string source_id;
  int64_t docs = 0;
  int64_t pages = 0;
  int64_t tokens = 0;
  int64_t images = 0;
  int64_t tables = 0;
  int64_t links = 0;
  int64_t identifiers = 0;
  int64_t titles = 0;
  int64_t summaries = 0;
  int64_t bodies = 0;

  void Add(const DocumentManifest& m);
  void Add(const SourceStats& other);

  friend bool operator==(const SourceStats&, const SourceStats&) = default;
};

struct CorpusStats {
  std::vector<SourceStats> rows;  // One per source, sorted by id.
  SourceStats total;              // source_id "Total".

  // Aligned plain-text table with a totals row.
  std::string ToText() const;
  nlohmann::json ToJson() const;
};

// Every registered source gets a row, including sources without documents.
// With `source_id` set, only that source is reported.
absl::StatusOr<CorpusStats> ComputeStats(
    const CorpusStore& store, std::optional<std::string> source_id = {});

struct VerifyReport {
  int documents = 0;
  int records = 0;
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};

// Read-only. Reloads every layout (which enforces the per-record L/B
// invariant) and checks that manifest counts match the records, that no text
// block overlaps a table beyond `suppress_threshold` and that table CSVs
// named by payloads exist.
VerifyReport VerifyCorpus(const CorpusStore& store,
                          double suppress_threshold = 0.7);

}  // namespace dla::corpus

#endif  // DLA_CORPUS_STATS_H_
