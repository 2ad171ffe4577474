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

#include "dla/service/curator.h"

#include <set>

#include "absl/strings/str_cat.h"
#include "absl/time/clock.h"
#include "absl/time/time.h"
#include "dla/core/strings.h"
#include "dla/corpus/overlay.h"
#include "dla/corpus/pipeline.h"
#include "glog/logging.h"

namespace dla::service {

using corpus::DocumentLayout;
using corpus::DocumentManifest;
using corpus::LayoutRecord;
using corpus::ValidationStatus;
using json = nlohmann::json;

LayoutLabel NextTextLabel(LayoutLabel label) {
  switch (label) {
    case LayoutLabel::kIdentifier:
      return LayoutLabel::kTitle;
    case LayoutLabel::kTitle:
      return LayoutLabel::kSummary;
    case LayoutLabel::kSummary:
      return LayoutLabel::kBody;
    default:
      return LayoutLabel::kIdentifier;
  }
}

json LabelSnapshot::ToJson() const {
  return {{"L", Code(label)},
          {"origin", std::string(LabelOriginName(origin))},
          {"confidence", confidence},
          {"model_version", model_version}};
}

absl::StatusOr<LabelSnapshot> LabelSnapshot::FromJson(const json& j) {
  try {
    LabelSnapshot s;
    auto label = LayoutLabelFromCode(j.at("L").get<int>());
    if (!label.ok()) return label.status();
    auto origin = ParseLabelOrigin(j.at("origin").get<std::string>());
    if (!origin.ok()) return origin.status();
    s.label = *label;
    s.origin = *origin;
    s.confidence = j.at("confidence").get<double>();
    s.model_version = j.at("model_version").get<int>();
    return s;
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad label snapshot: ", e.what()));
  }
}

namespace {

LabelSnapshot Snapshot(const LayoutRecord& r) {
  return {r.block.label, r.block.label_origin, r.confidence, r.model_version};
}

void Restore(const LabelSnapshot& s, LayoutRecord* r) {
  r->block.label = s.label;
  r->block.label_origin = s.origin;
  r->confidence = s.confidence;
  r->model_version = s.model_version;
  r->fv.l = s.label;
}

LayoutRecord* FindBlock(DocumentLayout* layout, const std::string& block_id) {
  for (LayoutRecord& r : layout->records) {
    if (r.block.block_id == block_id) return &r;
  }
  return nullptr;
}

json Change(const std::string& block_id, const LabelSnapshot& from,
            const LabelSnapshot& to) {
  return {{"block_id", block_id}, {"from", from.ToJson()}, {"to", to.ToJson()}};
}

labeler::CuratedDocument ToCurated(const DocumentLayout& layout) {
  labeler::CuratedDocument doc;
  doc.doc_id = layout.doc_id;
  doc.page_count = static_cast<int>(layout.pages.size());
  for (const LayoutRecord& r : layout.records) {
    if (r.block.kind != BlockKind::kText) continue;
    doc.blocks.push_back(
        {r.fv, r.page, r.block.label, r.block.label_origin, r.confidence});
  }
  return doc;
}

}  // namespace

absl::Status ApplyJournalEntry(const json& entry, DocumentLayout* layout) {
  if (entry.value("doc_id", "") != layout->doc_id) return absl::OkStatus();
  auto apply = [&](const json& change) -> absl::Status {
    const std::string block_id = change.at("block_id").get<std::string>();
    LayoutRecord* r = FindBlock(layout, block_id);
    if (r == nullptr) {
      return absl::NotFoundError(absl::StrCat("journal names unknown block ",
                                              block_id, " of ",
                                              layout->doc_id));
    }
    auto to = LabelSnapshot::FromJson(change.at("to"));
    if (!to.ok()) return to.status();
    Restore(*to, r);
    return absl::OkStatus();
  };
  try {
    if (entry.contains("changes")) {
      for (const json& c : entry.at("changes")) {
        if (auto s = apply(c); !s.ok()) return s;
      }
    } else if (entry.contains("block_id") && entry.contains("to")) {
      return apply(entry);
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad journal entry: ", e.what()));
  }
  return absl::OkStatus();
}

Curator::Curator(corpus::CorpusStore* store, CuratorOptions options)
    : store_(store), options_(std::move(options)) {
  auto journal = store_->ReadJournal();
  if (journal.ok()) {
    next_seq_ = static_cast<int64_t>(journal->size());
  } else {
    LOG(ERROR) << "journal unreadable: " << journal.status();
  }
  if (!options_.synchronous) worker_ = std::thread([this] { WorkerLoop(); });
}

Curator::~Curator() {
  {
    std::lock_guard<std::mutex> lock(jobs_mu_);
    stopping_ = true;
  }
  jobs_cv_.notify_all();
  if (worker_.joinable()) worker_.join();
}

std::shared_ptr<std::mutex> Curator::DocMutex(const std::string& doc_id) {
  std::lock_guard<std::mutex> lock(docs_mu_);
  auto& m = doc_locks_[doc_id];
  if (!m) m = std::make_shared<std::mutex>();
  return m;
}

absl::Status Curator::Journal(json entry) {
  std::lock_guard<std::mutex> lock(journal_mu_);
  entry["seq"] = next_seq_;
  entry["ts"] = absl::FormatTime("%Y-%m-%dT%H:%M:%E3SZ", absl::Now(),
                                 absl::UTCTimeZone());
  if (auto s = store_->AppendJournal(entry); !s.ok()) return s;
  ++next_seq_;
  return absl::OkStatus();
}

absl::Status Curator::Persist(DocumentLayout& layout,
                              DocumentManifest& manifest) {
  corpus::FillCounts(layout, &manifest);
  if (auto s = store_->WriteLayout(layout); !s.ok()) return s;
  return store_->WriteManifest(manifest);
}

absl::StatusOr<std::vector<DocumentManifest>> Curator::ListDocuments(
    std::optional<std::string> source_id,
    std::optional<ValidationStatus> status) const {
  if (source_id) {
    if (auto p = store_->GetSource(*source_id); !p.ok()) return p.status();
  }
  auto all = store_->ListManifests(source_id);
  if (!all.ok()) return all.status();
  if (!status) return all;
  std::vector<DocumentManifest> out;
  for (DocumentManifest& m : *all) {
    if (m.status == *status) out.push_back(std::move(m));
  }
  return out;
}

absl::StatusOr<json> Curator::GetPage(const std::string& doc_id,
                                      int page) const {
  if (!store_->HasDocument(doc_id)) {
    return absl::NotFoundError(absl::StrCat("unknown document '", doc_id, "'"));
  }
  auto layout = store_->ReadLayout(doc_id);
  if (!layout.ok()) return layout.status();
  if (page < 0 || page >= static_cast<int>(layout->pages.size())) {
    return absl::NotFoundError(
        absl::StrCat("document '", doc_id, "' has no page ", page));
  }
  return corpus::PageView(*layout, page);
}

absl::StatusOr<LayoutRecord> Curator::SetLabel(const std::string& doc_id,
                                               const std::string& block_id,
                                               const LabelAction& action) {
  if (!store_->HasDocument(doc_id)) {
    return absl::NotFoundError(absl::StrCat("unknown document '", doc_id, "'"));
  }
  auto mu = DocMutex(doc_id);
  std::lock_guard<std::mutex> lock(*mu);
  auto manifest = store_->ReadManifest(doc_id);
  if (!manifest.ok()) return manifest.status();
  auto layout = store_->ReadLayout(doc_id);
  if (!layout.ok()) return layout.status();
  LayoutRecord* r = FindBlock(&*layout, block_id);
  if (r == nullptr) {
    return absl::NotFoundError(
        absl::StrCat("document '", doc_id, "' has no block '", block_id, "'"));
  }
  if (r->block.kind != BlockKind::kText) {
    return absl::FailedPreconditionError(absl::StrCat(
        "block ", block_id, " is a ", ToAbsl(BlockKindName(r->block.kind)),
        " block; only text blocks can be relabeled"));
  }
  if (!action.cycle && !IsTextLabel(action.label)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "'", ToAbsl(LayoutLabelName(action.label)), "' is not a text label"));
  }
  const LabelSnapshot from = Snapshot(*r);
  LabelSnapshot to;
  to.label = action.cycle ? NextTextLabel(r->block.label) : action.label;
  to.origin = LabelOrigin::kHuman;
  Restore(to, r);
  if (manifest->status == ValidationStatus::kUnvalidated) {
    manifest->status = ValidationStatus::kInReview;
  }
  if (auto s = Persist(*layout, *manifest); !s.ok()) return s;
  json entry = {{"action", "label"},
                {"doc_id", doc_id},
                {"source_id", manifest->source_id},
                {"block_id", block_id},
                {"mode", action.cycle ? "cycle" : "set"},
                {"from", from.ToJson()},
                {"to", to.ToJson()}};
  if (auto s = Journal(std::move(entry)); !s.ok()) return s;
  return *r;
}

absl::StatusOr<LayoutRecord> Curator::RevertLabel(const std::string& doc_id,
                                                  const std::string& block_id) {
  if (!store_->HasDocument(doc_id)) {
    return absl::NotFoundError(absl::StrCat("unknown document '", doc_id, "'"));
  }
  auto mu = DocMutex(doc_id);
  std::lock_guard<std::mutex> lock(*mu);
  auto journal = store_->ReadJournal();
  if (!journal.ok()) return journal.status();
  std::set<int64_t> reverted;
  for (const json& e : *journal) {
    if (e.value("action", "") == "revert") {
      reverted.insert(e.value("reverts", int64_t{-1}));
    }
  }
  const json* target = nullptr;
  for (auto it = journal->rbegin(); it != journal->rend(); ++it) {
    if (it->value("action", "") != "label") continue;
    if (it->value("doc_id", "") != doc_id) continue;
    if (it->value("block_id", "") != block_id) continue;
    if (reverted.count(it->value("seq", int64_t{-1})) > 0) continue;
    target = &*it;
    break;
  }
  if (target == nullptr) {
    return absl::NotFoundError(absl::StrCat("no label change to revert for ",
                                            doc_id, "/", block_id));
  }
  auto restored = LabelSnapshot::FromJson(target->at("from"));
  if (!restored.ok()) return restored.status();
  auto manifest = store_->ReadManifest(doc_id);
  if (!manifest.ok()) return manifest.status();
  auto layout = store_->ReadLayout(doc_id);
  if (!layout.ok()) return layout.status();
  LayoutRecord* r = FindBlock(&*layout, block_id);
  if (r == nullptr) {
    return absl::NotFoundError(
        absl::StrCat("document '", doc_id, "' has no block '", block_id, "'"));
  }
  const LabelSnapshot from = Snapshot(*r);
  Restore(*restored, r);
  if (auto s = Persist(*layout, *manifest); !s.ok()) return s;
  json entry = {{"action", "revert"},
                {"doc_id", doc_id},
                {"source_id", manifest->source_id},
                {"block_id", block_id},
                {"reverts", target->at("seq")},
                {"from", from.ToJson()},
                {"to", restored->ToJson()}};
  if (auto s = Journal(std::move(entry)); !s.ok()) return s;
  return *r;
}

absl::StatusOr<DocumentManifest> Curator::Validate(const std::string& doc_id) {
  if (!store_->HasDocument(doc_id)) {
    return absl::NotFoundError(absl::StrCat("unknown document '", doc_id, "'"));
  }
  DocumentManifest result;
  {
    auto mu = DocMutex(doc_id);
    std::lock_guard<std::mutex> lock(*mu);
    auto manifest = store_->ReadManifest(doc_id);
    if (!manifest.ok()) return manifest.status();
    if (manifest->status == ValidationStatus::kValidated) return *manifest;
    auto layout = store_->ReadLayout(doc_id);
    if (!layout.ok()) return layout.status();
    json changes = json::array();
    int text_blocks = 0;
    int edited = 0;
    for (LayoutRecord& r : layout->records) {
      if (r.block.kind != BlockKind::kText) continue;
      ++text_blocks;
      if (r.block.label_origin == LabelOrigin::kHuman) {
        ++edited;
        continue;
      }
      const LabelSnapshot from = Snapshot(r);
      LabelSnapshot to;
      to.label = r.block.label;
      to.origin = LabelOrigin::kHuman;
      Restore(to, &r);
      changes.push_back(Change(r.block.block_id, from, to));
    }
    manifest->status = ValidationStatus::kValidated;
    if (auto s = Persist(*layout, *manifest); !s.ok()) return s;
    json entry = {{"action", "validate"},
                  {"doc_id", doc_id},
                  {"source_id", manifest->source_id},
                  {"pages", manifest->page_count},
                  {"changes", std::move(changes)}};
    if (auto s = Journal(std::move(entry)); !s.ok()) return s;
    {
      std::lock_guard<std::mutex> jl(jobs_mu_);
      last_validation_[manifest->source_id] = {
          {"doc_id", doc_id},
          {"pages", manifest->page_count},
          {"text_blocks", text_blocks},
          {"human_edited_blocks", edited}};
    }
    result = *std::move(manifest);
  }
  Enqueue({result.source_id, false});
  return result;
}

absl::StatusOr<int> Curator::RequestTrain(const std::string& source_id) {
  auto manifests = ListDocuments(source_id, ValidationStatus::kValidated);
  if (!manifests.ok()) return manifests.status();
  int pages = 0;
  for (const DocumentManifest& m : *manifests) pages += m.page_count;
  const int threshold = options_.curation.page_threshold;
  if (pages < threshold) {
    return absl::FailedPreconditionError(absl::StrCat(
        "source '", source_id, "' has ", pages,
        " validated pages; a model is trained only once at least ", threshold,
        " pages are validated"));
  }
  int ahead = 0;
  {
    std::lock_guard<std::mutex> lock(jobs_mu_);
    ahead = static_cast<int>(jobs_.size()) + (running_ ? 1 : 0);
  }
  Enqueue({source_id, true});
  return ahead;
}

absl::StatusOr<json> Curator::SourceStatus(const std::string& source_id) const {
  if (auto p = store_->GetSource(source_id); !p.ok()) return p.status();
  auto state = store_->LoadState(source_id);
  if (!state.ok()) return state.status();
  json j = {{"source_id", source_id},
            {"mode", std::string(labeler::LabelingModeName(state->mode))},
            {"model_version", state->model_version},
            {"validated_pages", state->validated_pages},
            {"validated_docs", state->validated_docs.size()},
            {"threshold", options_.curation.page_threshold}};
  std::lock_guard<std::mutex> lock(jobs_mu_);
  std::string training = "idle";
  if (running_ && *running_ == source_id) {
    training = "running";
  } else {
    for (const Job& job : jobs_) {
      if (job.source_id == source_id) training = "queued";
    }
  }
  j["training"] = training;
  auto get = [&](const std::map<std::string, json>& m) {
    auto it = m.find(source_id);
    return it == m.end() ? json() : it->second;
  };
  j["last_validation"] = get(last_validation_);
  j["last_training"] = get(last_training_);
  auto err = last_error_.find(source_id);
  j["last_error"] = err == last_error_.end() ? json() : json(err->second);
  return j;
}

void Curator::Enqueue(Job job) {
  if (options_.synchronous) {
    absl::Status s = RunJob(job);
    std::lock_guard<std::mutex> lock(jobs_mu_);
    if (s.ok()) {
      last_error_.erase(job.source_id);
    } else {
      last_error_[job.source_id] = std::string(s.message());
    }
    return;
  }
  {
    std::lock_guard<std::mutex> lock(jobs_mu_);
    for (Job& queued : jobs_) {
      if (queued.source_id == job.source_id) {
        // A queued job reads the corpus when it starts, so it covers this
        // request too.
        queued.force = queued.force || job.force;
        return;
      }
    }
    jobs_.push_back(std::move(job));
  }
  jobs_cv_.notify_all();
}

void Curator::WaitIdle() {
  std::unique_lock<std::mutex> lock(jobs_mu_);
  jobs_cv_.wait(lock, [&] { return jobs_.empty() && !running_; });
}

void Curator::WorkerLoop() {
  while (true) {
    Job job;
    {
      std::unique_lock<std::mutex> lock(jobs_mu_);
      jobs_cv_.wait(lock, [&] { return stopping_ || !jobs_.empty(); });
      if (jobs_.empty()) return;
      job = std::move(jobs_.front());
      jobs_.pop_front();
      running_ = job.source_id;
    }
    absl::Status s = RunJob(job);
    {
      std::lock_guard<std::mutex> lock(jobs_mu_);
      running_.reset();
      if (s.ok()) {
        last_error_.erase(job.source_id);
      } else {
        LOG(ERROR) << "curation job for " << job.source_id << ": " << s;
        last_error_[job.source_id] = std::string(s.message());
      }
    }
    jobs_cv_.notify_all();
  }
}

absl::Status Curator::RunJob(const Job& job) {
  const std::string& source_id = job.source_id;
  auto state = store_->LoadState(source_id);
  if (!state.ok()) return state.status();
  auto fonts = store_->LoadFonts(source_id);
  if (!fonts.ok()) return fonts.status();
  auto manifests = store_->ListManifests(source_id);
  if (!manifests.ok()) return manifests.status();

  std::vector<labeler::CuratedDocument> newly;
  std::vector<labeler::CuratedDocument> previously;
  std::vector<std::string> pending;
  for (const DocumentManifest& m : *manifests) {
    if (m.status != ValidationStatus::kValidated) {
      pending.push_back(m.doc_id);
      continue;
    }
    auto layout = store_->ReadLayout(m.doc_id);
    if (!layout.ok()) return layout.status();
    if (state->validated_docs.count(m.doc_id) > 0) {
      previously.push_back(ToCurated(*layout));
    } else {
      newly.push_back(ToCurated(*layout));
    }
  }
  labeler::CurationOptions options = options_.curation;
  options.force_retrain = job.force;
  auto update = labeler::CurationStep(*state, *fonts, newly, previously, {},
                                      options);
  if (!update.ok()) return update.status();
  if (!update->retrained) return store_->SaveState(update->state);

  if (auto s = store_->SaveModel(source_id, *update->model); !s.ok()) return s;
  if (auto s = store_->SaveFonts(source_id, update->fonts); !s.ok()) return s;
  if (auto s = store_->SaveState(update->state); !s.ok()) return s;

  auto rules = store_->LoadRules(source_id);
  if (!rules.ok()) return rules.status();
  corpus::Labeler labeler;
  labeler.rules = &*rules;
  labeler.model = update->model.get();
  labeler.fonts = &update->fonts;
  labeler.model_version = update->state.model_version;
  int relabeled = 0;
  for (const std::string& doc_id : pending) {
    auto mu = DocMutex(doc_id);
    std::lock_guard<std::mutex> lock(*mu);
    auto manifest = store_->ReadManifest(doc_id);
    if (!manifest.ok()) return manifest.status();
    if (manifest->status == ValidationStatus::kValidated) continue;
    auto layout = store_->ReadLayout(doc_id);
    if (!layout.ok()) return layout.status();
    std::vector<LabelSnapshot> before;
    for (const LayoutRecord& r : layout->records) before.push_back(Snapshot(r));
    if (auto s = corpus::LabelLayout(labeler, &*layout); !s.ok()) return s;
    json changes = json::array();
    for (size_t i = 0; i < layout->records.size(); ++i) {
      const LayoutRecord& r = layout->records[i];
      if (r.block.kind != BlockKind::kText) continue;
      const LabelSnapshot after = Snapshot(r);
      const LabelSnapshot& b = before[i];
      if (b.label != after.label || b.origin != after.origin ||
          b.confidence != after.confidence ||
          b.model_version != after.model_version) {
        changes.push_back(Change(r.block.block_id, b, after));
      }
    }
    if (changes.empty()) continue;
    if (auto s = Persist(*layout, *manifest); !s.ok()) return s;
    json entry = {{"action", "relabel"},
                  {"doc_id", doc_id},
                  {"source_id", source_id},
                  {"model_version", update->state.model_version},
                  {"changes", std::move(changes)}};
    if (auto s = Journal(std::move(entry)); !s.ok()) return s;
    ++relabeled;
  }
  std::lock_guard<std::mutex> lock(jobs_mu_);
  last_training_[source_id] = {
      {"model_version", update->state.model_version},
      {"training_docs", update->state.validated_docs.size()},
      {"validated_pages", update->state.validated_pages},
      {"relabeled_docs", relabeled},
      {"warnings", update->warnings}};
  return absl::OkStatus();
}

}  // namespace dla::service
