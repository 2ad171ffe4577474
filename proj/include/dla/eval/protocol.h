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

// Repeated document-level train/test evaluation of the per-source forest.
//
// Each repeat shuffles the validated documents with its own seed, trains a
// fresh forest on the first train_fraction of them and scores the text
// blocks of the rest. Per-class accuracy is the recall of that class; a class
// missing from a repeat's test split is left out of that class's mean.
// Standard deviations are population deviations over the counted repeats.

#ifndef DLA_EVAL_PROTOCOL_H_
#define DLA_EVAL_PROTOCOL_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/corpus/store.h"
#include "dla/labeler/curation.h"
#include "dla/labeler/forest.h"
#include "json.hpp"

namespace dla::eval {

inline constexpr int kMinProtocolDocuments = 5;

struct ProtocolOptions {
  int repeats = 10;
  double train_fraction = 0.8;
  uint64_t seed = 1;
  labeler::ForestParams forest;
  // Repeats run on this many threads; results do not depend on it.
  int workers = 1;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
  int count = 0;  // Repeats that contributed.
};

// Column order of report tables: Identifier, Title, Summary, Body.
inline constexpr std::array<const char*, 4> kClassColumns = {
    "ID", "Title", "Summary", "Body"};

struct RepeatLog {
  int repeat = 0;
  uint64_t seed = 0;
  std::vector<std::string> train_docs;
  std::vector<std::string> test_docs;
  int test_blocks = 0;
  int correct = 0;
  double overall = 0.0;  // Percent.
  std::array<int, 4> support{};
  std::array<int, 4> class_correct{};
  // Percent; nullopt when the class is absent from the test split.
  std::array<std::optional<double>, 4> per_class{};
};

struct EvalReport {
  std::string source_id;
  int repeats = 0;
  double train_fraction = 0.0;
  uint64_t seed = 0;
  MeanStd overall;
  std::array<MeanStd, 4> per_class{};
  std::array<int64_t, 4> support{};  // Test blocks per class, all repeats.
  std::vector<RepeatLog> logs;

  nlohmann::json ToJson() const;
  // "Source | Overall | ID | Title | Summary | Body" with mean_std cells.
  std::string ToTable() const;
};

// mean_std over `values` as used by the report.
MeanStd Summarize(std::span<const double> values);

// Formats 98.0812, 1.1688 as "98.08_1.17".
std::string FormatMeanStd(const MeanStd& m);

absl::StatusOr<EvalReport> RunProtocol(
    std::string_view source_id,
    std::span<const labeler::CuratedDocument> documents,
    const ProtocolOptions& options = {});

// Text blocks of the source's validated documents, sorted by doc_id.
absl::StatusOr<std::vector<labeler::CuratedDocument>> LoadValidatedDocuments(
    const corpus::CorpusStore& store, std::string_view source_id);

// Renders several reports as one table, one row per source.
std::string ReportsTable(std::span<const EvalReport> reports);

}  // namespace dla::eval

#endif  // DLA_EVAL_PROTOCOL_H_
