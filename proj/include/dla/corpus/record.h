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

// Persisted annotation units: per-block layout records and per-document
// manifests.
//
// A layout file is JSON Lines. The first line describes the document
// ({"record":"document", ...}); every following line is one block
// ({"record":"block", ...}) carrying its geometry, features, label and
// label provenance. Text payloads longer than kMaxInlinePayloadChars code
// points are truncated in the file and stored in full in a sidecar.

#ifndef DLA_CORPUS_RECORD_H_
#define DLA_CORPUS_RECORD_H_

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/core/layout.h"
#include "dla/features/features.h"
#include "dla/table/table.h"
#include "json.hpp"

namespace dla::corpus {

inline constexpr size_t kMaxInlinePayloadChars = 2000;

struct LayoutRecord {
  std::string doc_id;
  std::string source_id;
  PageGeometry page;
  LayoutBlock block;  // Spans are not persisted.
  features::FeatureVector fv;
  int model_version = 0;  // Model that produced a model label.
  double confidence = 1.0;
  std::optional<table::TableGrid> table;

  friend bool operator==(const LayoutRecord&, const LayoutRecord&) = default;
};

struct DocumentLayout {
  std::string doc_id;
  std::string source_id;
  std::vector<PageGeometry> pages;
  std::vector<LayoutRecord> records;

  friend bool operator==(const DocumentLayout&, const DocumentLayout&) = default;
};

enum class ValidationStatus { kUnvalidated, kInReview, kValidated };

std::string_view ValidationStatusName(ValidationStatus s);
absl::StatusOr<ValidationStatus> ParseValidationStatus(std::string_view s);

struct DocumentManifest {
  std::string doc_id;
  std::string source_id;
  std::string origin;  // Path or URL the document came from.
  std::string content_hash;
  std::optional<std::string> publication_date;  // YYYY-MM-DD.
  int page_count = 0;
  int token_count = 0;
  // Indexed by BlockKind code.
  std::array<int, 4> kind_counts{};
  // Identifier, Title, Summary, Body.
  std::array<int, 4> label_counts{};
  // Indexed by LabelOrigin.
  std::array<int, 3> origin_counts{};
  ValidationStatus status = ValidationStatus::kUnvalidated;
  std::vector<std::string> warnings;

  friend bool operator==(const DocumentManifest&,
                         const DocumentManifest&) = default;
};

// Recomputes the counting fields of `m` (pages, tokens, kinds, labels,
// provenance) from `layout`.
void FillCounts(const DocumentLayout& layout, DocumentManifest* m);

// Sidecar payloads keyed by block id.
using Sidecars = std::map<std::string, std::string>;

// JSON Lines text of `layout`. Text payloads above the inline limit are
// truncated and returned through `sidecars`.
std::string SerializeLayout(const DocumentLayout& layout, Sidecars* sidecars);

// Parses a layout file. `load_sidecar` supplies full payloads of truncated
// records. Errors name the offending line.
absl::StatusOr<DocumentLayout> ParseLayout(
    std::string_view jsonl,
    const std::function<absl::StatusOr<std::string>(const std::string&)>&
        load_sidecar);

nlohmann::json ManifestToJson(const DocumentManifest& m);
absl::StatusOr<DocumentManifest> ManifestFromJson(const nlohmann::json& j);

}  // namespace dla::corpus

#endif  // DLA_CORPUS_RECORD_H_
