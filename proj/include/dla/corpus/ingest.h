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

#ifndef DLA_CORPUS_INGEST_H_
#define DLA_CORPUS_INGEST_H_

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/corpus/pipeline.h"
#include "dla/corpus/store.h"

namespace dla::corpus {

enum class IngestOutcome { kIngested, kDuplicate, kFiltered };

// "ingested", "duplicate", "filtered_pre2014".
std::string_view IngestOutcomeName(IngestOutcome o);

struct IngestInput {
  std::string bytes;
  std::string origin;     // Path or URL, recorded in the manifest.
  std::string file_name;  // Fallback for the publication date.
};

struct IngestResult {
  IngestOutcome outcome = IngestOutcome::kIngested;
  std::string doc_id;
  // Set for ingested documents.
  std::optional<DocumentManifest> manifest;
};

// Ingests documents for one source with the labeling state current at
// construction: heuristic rules, or the source's model once one exists.
// Ingest() may be called from several threads.
class Ingestor {
 public:
  static absl::StatusOr<std::unique_ptr<Ingestor>> Create(
      CorpusStore* store, std::string_view source_id);

  absl::StatusOr<IngestResult> Ingest(const IngestInput& input);

  // Reads and ingests `paths` on `workers` threads. Results follow the input
  // order. Failures are also appended to the dead-letter log.
  std::vector<absl::StatusOr<IngestResult>> IngestFiles(
      const std::vector<std::filesystem::path>& paths, int workers);

  const SourceProfile& profile() const { return profile_; }

 private:
  Ingestor(CorpusStore* store, SourceProfile profile)
      : store_(store), profile_(std::move(profile)) {}

  absl::StatusOr<IngestResult> Process(const IngestInput& input,
                                       const std::string& hash,
                                       const std::string& doc_id);

  CorpusStore* store_;
  SourceProfile profile_;
  PipelineOptions options_;
  labeler::HeuristicRuleSet rules_;
  std::optional<labeler::ForestModel> model_;
  features::FontDictionary fonts_;
  int model_version_ = 0;

  std::mutex mu_;
  std::set<std::string> claimed_;
};

}  // namespace dla::corpus

#endif  // DLA_CORPUS_INGEST_H_
