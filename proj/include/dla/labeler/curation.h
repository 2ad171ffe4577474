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

// Per-source curation loop: heuristic bootstrap, human validation, and
// periodic forest retraining once enough pages are validated.

#ifndef DLA_LABELER_CURATION_H_
#define DLA_LABELER_CURATION_H_

#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/core/layout.h"
#include "dla/features/features.h"
#include "dla/labeler/forest.h"
#include "dla/labeler/rules.h"

namespace dla::labeler {

inline constexpr int kValidatedPageThreshold = 50;

enum class LabelingMode { kHeuristic, kModel };

std::string_view LabelingModeName(LabelingMode mode);

struct CurationState {
  std::string source_id;
  std::set<std::string> validated_docs;
  int validated_pages = 0;
  int model_version = 0;  // 0 until the first model is trained.
  LabelingMode mode = LabelingMode::kHeuristic;

  friend bool operator==(const CurationState&, const CurationState&) = default;
};

struct CuratedBlock {
  features::FeatureVector fv;
  PageGeometry page;
  LayoutLabel label = LayoutLabel::kBody;
  LabelOrigin origin = LabelOrigin::kHeuristic;
  double confidence = 1.0;
};

// The text blocks of one document.
struct CuratedDocument {
  std::string doc_id;
  int page_count = 0;
  std::vector<CuratedBlock> blocks;
};

struct CurationOptions {
  int page_threshold = kValidatedPageThreshold;
  // Retrain past the threshold even when no new document was validated.
  bool force_retrain = false;
  ForestParams forest;
};

struct CurationUpdate {
  CurationState state;
  bool retrained = false;
  // Set when retrained.
  std::shared_ptr<const ForestModel> model;
  features::FontDictionary fonts;
  // Pending documents relabeled by the new model.
  std::vector<std::string> relabeled_docs;
  std::vector<std::string> warnings;
};

// Folds `newly_validated` into the state. Once the validated page count
// reaches the threshold, trains a forest on every validated block
// (`previously_validated` plus `newly_validated`), bumps the model version,
// switches to model mode and relabels `pending` with origin=model. Documents
// already counted as validated are ignored. On a training failure nothing is
// modified and the error is returned, so the caller keeps its prior model.
absl::StatusOr<CurationUpdate> CurationStep(
    const CurationState& state, const features::FontDictionary& fonts,
    std::span<const CuratedDocument> newly_validated,
    std::span<const CuratedDocument> previously_validated,
    std::span<CuratedDocument> pending, const CurationOptions& options = {});

// Labels a document's blocks with the model (origin=model) or, when `model`
// is null, with the heuristic rules (origin=heuristic).
absl::Status LabelDocument(const HeuristicRuleSet& rules,
                           const ForestModel* model,
                           const features::FontDictionary& fonts,
                           CuratedDocument* doc);

}  // namespace dla::labeler

#endif  // DLA_LABELER_CURATION_H_
