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

// On-disk corpus:
//
//   <root>/sources/<id>/profile.toml   source registry entry
//   <root>/sources/<id>/rules.txt      heuristic rules
//   <root>/sources/<id>/fonts.tsv      font dictionary
//   <root>/sources/<id>/model.txt      current forest
//   <root>/sources/<id>/state.json     curation state
//   <root>/docs/<doc_id>.pdf
//   <root>/layout/<doc_id>.jsonl       (+ <doc_id>.text/ sidecars)
//   <root>/tables/<doc_id>/p<n>_t<k>.csv
//   <root>/overlays/<doc_id>/p<n>.svg
//   <root>/manifests/<doc_id>.json
//   <root>/journal.jsonl, filtered.jsonl, dead_letter.jsonl
//
// File replacement is atomic (write to a temporary, then rename). Appends to
// the logs are serialized by the store.

#ifndef DLA_CORPUS_STORE_H_
#define DLA_CORPUS_STORE_H_

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/corpus/profile.h"
#include "dla/corpus/record.h"
#include "dla/features/features.h"
#include "dla/labeler/curation.h"
#include "dla/labeler/forest.h"
#include "dla/labeler/rules.h"
#include "json.hpp"

namespace dla::corpus {

absl::Status WriteFileAtomic(const std::filesystem::path& path,
                             std::string_view contents);
absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path);

class CorpusStore {
 public:
  // Creates the directory skeleton when missing.
  static absl::StatusOr<std::unique_ptr<CorpusStore>> Open(
      const std::filesystem::path& root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path SourceDir(std::string_view source_id) const;
  std::filesystem::path PdfPath(std::string_view doc_id) const;
  std::filesystem::path LayoutPath(std::string_view doc_id) const;
  std::filesystem::path SidecarDir(std::string_view doc_id) const;
  std::filesystem::path ManifestPath(std::string_view doc_id) const;
  std::filesystem::path OverlayDir(std::string_view doc_id) const;

  // Sources.
  absl::Status PutSource(const SourceProfile& profile);
  absl::StatusOr<SourceProfile> GetSource(std::string_view source_id) const;
  std::vector<std::string> ListSources() const;
  absl::Status PutRules(std::string_view source_id, std::string_view text);
  absl::StatusOr<labeler::HeuristicRuleSet> LoadRules(
      std::string_view source_id) const;
  // An empty dictionary when none was saved yet.
  absl::StatusOr<features::FontDictionary> LoadFonts(
      std::string_view source_id) const;
  absl::Status SaveFonts(std::string_view source_id,
                         const features::FontDictionary& fonts);
  // nullopt when the source has no model yet.
  absl::StatusOr<std::optional<labeler::ForestModel>> LoadModel(
      std::string_view source_id) const;
  absl::Status SaveModel(std::string_view source_id,
                         const labeler::ForestModel& model);
  // A fresh heuristic-mode state when none was saved yet.
  absl::StatusOr<labeler::CurationState> LoadState(
      std::string_view source_id) const;
  absl::Status SaveState(const labeler::CurationState& state);

  // Documents.
  bool HasDocument(std::string_view doc_id) const;
  absl::Status PutPdf(std::string_view doc_id, std::string_view bytes);
  // Writes each table's cells to the CSV named by its payload. A table whose
  // export fails keeps its record with an empty payload and adds a warning.
  void ExportTables(DocumentLayout* layout,
                    std::vector<std::string>* warnings) const;
  absl::Status WriteLayout(const DocumentLayout& layout);
  absl::StatusOr<DocumentLayout> ReadLayout(std::string_view doc_id) const;
  absl::Status WriteManifest(const DocumentManifest& manifest);
  absl::StatusOr<DocumentManifest> ReadManifest(std::string_view doc_id) const;
  // Sorted by doc_id; restricted to `source_id` when given.
  absl::StatusOr<std::vector<DocumentManifest>> ListManifests(
      std::optional<std::string> source_id = std::nullopt) const;

  // Append-only logs, one JSON object per line.
  absl::Status AppendJournal(const nlohmann::json& entry);
  absl::StatusOr<std::vector<nlohmann::json>> ReadJournal() const;
  absl::Status AppendFiltered(const nlohmann::json& entry);
  absl::StatusOr<std::vector<nlohmann::json>> ReadFiltered() const;
  absl::Status AppendDeadLetter(const nlohmann::json& entry);

 private:
  explicit CorpusStore(std::filesystem::path root) : root_(std::move(root)) {}

  absl::Status Append(const std::string& name, const nlohmann::json& entry);
  absl::StatusOr<std::vector<nlohmann::json>> ReadLog(
      const std::string& name) const;

  std::filesystem::path root_;
  std::mutex log_mu_;
};

}  // namespace dla::corpus

#endif  // DLA_CORPUS_STORE_H_
