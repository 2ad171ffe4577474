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

// Curation operations behind the HTTP API: label edits, validation, revert
// and the per-source training queue. Every label mutation is appended to the
// corpus journal.
//
// Error mapping used by the server: NotFound -> 404, FailedPrecondition ->
// 409, InvalidArgument -> 400.

#ifndef DLA_SERVICE_CURATOR_H_
#define DLA_SERVICE_CURATOR_H_

#include <condition_variable>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/corpus/record.h"
#include "dla/corpus/store.h"
#include "dla/labeler/curation.h"
#include "json.hpp"

namespace dla::service {

// Identifier -> Title -> Summary -> Body -> Identifier.
LayoutLabel NextTextLabel(LayoutLabel label);

// Either cycles to the next text label or sets an explicit one.
struct LabelAction {
  bool cycle = true;
  LayoutLabel label = LayoutLabel::kBody;

  static LabelAction Cycle() { return {}; }
  static LabelAction Set(LayoutLabel l) { return {false, l}; }
};

// Label state of one block as recorded in the journal.
struct LabelSnapshot {
  LayoutLabel label = LayoutLabel::kBody;
  LabelOrigin origin = LabelOrigin::kHeuristic;
  double confidence = 1.0;
  int model_version = 0;

  nlohmann::json ToJson() const;
  static absl::StatusOr<LabelSnapshot> FromJson(const nlohmann::json& j);
};

// Applies the label changes of one journal entry to `layout`. Entries of
// other documents and entries without label changes are ignored.
absl::Status ApplyJournalEntry(const nlohmann::json& entry,
                               corpus::DocumentLayout* layout);

struct CuratorOptions {
  labeler::CurationOptions curation;
  // Run curation jobs inline instead of on the background worker.
  bool synchronous = false;
};

class Curator {
 public:
  Curator(corpus::CorpusStore* store, CuratorOptions options = {});
  ~Curator();

  Curator(const Curator&) = delete;
  Curator& operator=(const Curator&) = delete;

  corpus::CorpusStore* store() const { return store_; }

  // Manifests sorted by doc_id. NotFound for an unregistered source.
  absl::StatusOr<std::vector<corpus::DocumentManifest>> ListDocuments(
      std::optional<std::string> source_id,
      std::optional<corpus::ValidationStatus> status) const;

  // The PageView of one page. NotFound for unknown documents or pages.
  absl::StatusOr<nlohmann::json> GetPage(const std::string& doc_id,
                                         int page) const;

  // Relabels a text block with origin=human. Non-text blocks yield
  // FailedPrecondition. Moves an unvalidated document to in_review.
  absl::StatusOr<corpus::LayoutRecord> SetLabel(const std::string& doc_id,
                                                const std::string& block_id,
                                                const LabelAction& action);

  // Undoes the most recent label or revert entry of the block. NotFound when
  // the journal holds no label change for it.
  absl::StatusOr<corpus::LayoutRecord> RevertLabel(
      const std::string& doc_id, const std::string& block_id);

  // Freezes every text label of the document as human ground truth, marks it
  // validated and schedules a curation step for its source. Re-validating is
  // a no-op that returns the manifest.
  absl::StatusOr<corpus::DocumentManifest> Validate(const std::string& doc_id);

  // Queues a retraining job. FailedPrecondition below the page threshold.
  // Returns the number of jobs ahead of it.
  absl::StatusOr<int> RequestTrain(const std::string& source_id);

  // mode, model_version, validated_pages, validated_docs, threshold,
  // training ("idle", "queued" or "running"), last_validation,
  // last_training, last_error.
  absl::StatusOr<nlohmann::json> SourceStatus(
      const std::string& source_id) const;

  // Blocks until the training queue is empty and no job runs.
  void WaitIdle();

 private:
  struct Job {
    std::string source_id;
    bool force = false;
  };

  std::shared_ptr<std::mutex> DocMutex(const std::string& doc_id);
  absl::Status Journal(nlohmann::json entry);
  absl::Status Persist(corpus::DocumentLayout& layout,
                       corpus::DocumentManifest& manifest);
  void Enqueue(Job job);
  void WorkerLoop();
  absl::Status RunJob(const Job& job);

  corpus::CorpusStore* store_;
  CuratorOptions options_;

  std::mutex docs_mu_;
  std::map<std::string, std::shared_ptr<std::mutex>> doc_locks_;

  std::mutex journal_mu_;
  int64_t next_seq_ = 0;

  mutable std::mutex jobs_mu_;
  std::condition_variable jobs_cv_;
  std::deque<Job> jobs_;
  std::optional<std::string> running_;
  bool stopping_ = false;
  std::map<std::string, nlohmann::json> last_validation_;
  std::map<std::string, nlohmann::json> last_training_;
  std::map<std::string, std::string> last_error_;
  std::thread worker_;
};

}  // namespace dla::service

#endif  // DLA_SERVICE_CURATOR_H_
