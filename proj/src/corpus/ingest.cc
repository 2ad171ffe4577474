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

#include "dla/corpus/ingest.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/time/civil_time.h"
#include "dla/core/hash.h"
#include "dla/core/strings.h"
#include "glog/logging.h"

namespace dla::corpus {

std::string_view IngestOutcomeName(IngestOutcome o) {
  switch (o) {
    case IngestOutcome::kIngested:
      return "ingested";
    case IngestOutcome::kDuplicate:
      return "duplicate";
    case IngestOutcome::kFiltered:
      return "filtered_pre2014";
  }
  return "unknown";
}

absl::StatusOr<std::unique_ptr<Ingestor>> Ingestor::Create(
    CorpusStore* store, std::string_view source_id) {
  auto profile = store->GetSource(source_id);
  if (!profile.ok()) return profile.status();
  std::unique_ptr<Ingestor> ing(new Ingestor(store, *std::move(profile)));
  ing->options_.extract.reconstruct_words = ing->profile_.reconstruct_words;
  ing->options_.merge.gap_factor = ing->profile_.gap_factor;

  auto rules = store->LoadRules(source_id);
  if (!rules.ok()) return rules.status();
  ing->rules_ = *std::move(rules);
  auto state = store->LoadState(source_id);
  if (!state.ok()) return state.status();
  if (state->mode == labeler::LabelingMode::kModel) {
    auto model = store->LoadModel(source_id);
    if (!model.ok()) return model.status();
    auto fonts = store->LoadFonts(source_id);
    if (!fonts.ok()) return fonts.status();
    if (*model) {
      ing->model_ = **std::move(model);
      ing->fonts_ = *std::move(fonts);
      ing->model_version_ = state->model_version;
    }
  }
  return ing;
}

absl::StatusOr<IngestResult> Ingestor::Ingest(const IngestInput& input) {
  const std::string hash = Sha256Hex(input.bytes);
  const std::string doc_id = pdf::MakeDocId(profile_.source_id, hash);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (claimed_.count(doc_id) > 0 || store_->HasDocument(doc_id)) {
      return IngestResult{IngestOutcome::kDuplicate, doc_id, std::nullopt};
    }
    claimed_.insert(doc_id);
  }
  auto result = Process(input, hash, doc_id);
  if (!result.ok() || result->outcome != IngestOutcome::kIngested) {
    // Let a retry of the same bytes go through.
    std::lock_guard<std::mutex> lock(mu_);
    claimed_.erase(doc_id);
  }
  return result;
}

absl::StatusOr<IngestResult> Ingestor::Process(const IngestInput& input,
                                               const std::string& hash,
                                               const std::string& doc_id) {
  Labeler labeler;
  labeler.rules = &rules_;
  if (model_) {
    labeler.model = &*model_;
    labeler.fonts = &fonts_;
    labeler.model_version = model_version_;
  }
  PipelineOptions options = options_;
  options.extract.file_name = input.file_name;
  auto run = RunPipeline(input.bytes, profile_.source_id, options, labeler);
  if (!run.ok()) return run.status();

  std::optional<std::string> date;
  if (run->publication_date) {
    date = absl::FormatCivilTime(*run->publication_date);
    if (run->publication_date->year() < profile_.min_year) {
      nlohmann::json entry = {{"doc_id", doc_id},
                              {"source_id", profile_.source_id},
                              {"origin", input.origin},
                              {"publication_date", *date},
                              {"reason", "filtered_pre2014"}};
      if (auto s = store_->AppendFiltered(entry); !s.ok()) return s;
      return IngestResult{IngestOutcome::kFiltered, doc_id, std::nullopt};
    }
  }

  DocumentManifest m;
  m.doc_id = doc_id;
  m.source_id = profile_.source_id;
  m.origin = input.origin;
  m.content_hash = hash;
  m.publication_date = date;
  m.warnings = run->warnings;
  if (!date) m.warnings.push_back("undated");
  store_->ExportTables(&run->layout, &m.warnings);
  FillCounts(run->layout, &m);

  if (auto s = store_->PutPdf(doc_id, input.bytes); !s.ok()) return s;
  if (auto s = store_->WriteLayout(run->layout); !s.ok()) return s;
  // The manifest marks the document as present, so it goes last.
  if (auto s = store_->WriteManifest(m); !s.ok()) return s;
  return IngestResult{IngestOutcome::kIngested, doc_id, std::move(m)};
}

std::vector<absl::StatusOr<IngestResult>> Ingestor::IngestFiles(
    const std::vector<std::filesystem::path>& paths, int workers) {
  std::vector<absl::StatusOr<IngestResult>> results(
      paths.size(), absl::UnknownError("not processed"));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < paths.size(); i = next++) {
      const std::filesystem::path& p = paths[i];
      auto bytes = ReadFile(p);
      if (!bytes.ok()) {
        results[i] = bytes.status();
      } else {
        results[i] = Ingest(
            {*std::move(bytes), p.string(), p.filename().string()});
      }
      if (!results[i].ok()) {
        LOG(WARNING) << p.string() << ": " << results[i].status();
        nlohmann::json entry = {
            {"origin", p.string()},
            {"source_id", profile_.source_id},
            {"stage", "ingest"},
            {"error", std::string(results[i].status().message())}};
        if (auto s = store_->AppendDeadLetter(entry); !s.ok()) {
          LOG(ERROR) << "dead letter: " << s;
        }
      }
    }
  };
  const int n = std::clamp(workers, 1, 64);
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(work);
  work();
  for (std::thread& t : threads) t.join();
  return results;
}

}  // namespace dla::corpus
