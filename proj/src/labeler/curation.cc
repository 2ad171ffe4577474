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

#include "dla/labeler/curation.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "glog/logging.h"

namespace dla::labeler {

std::string_view LabelingModeName(LabelingMode mode) {
  return mode == LabelingMode::kModel ? "model" : "heuristic";
}

absl::StatusOr<CurationUpdate> CurationStep(
    const CurationState& state, const features::FontDictionary& fonts,
    std::span<const CuratedDocument> newly_validated,
    std::span<const CuratedDocument> previously_validated,
    std::span<CuratedDocument> pending, const CurationOptions& options) {
  CurationUpdate update;
  update.state = state;
  update.fonts = fonts;
  bool grew = false;
  for (const CuratedDocument& doc : newly_validated) {
    if (update.state.validated_docs.insert(doc.doc_id).second) {
      update.state.validated_pages += doc.page_count;
      grew = true;
    }
  }
  if (update.state.validated_pages < options.page_threshold) return update;
  if (!grew && state.model_version > 0 && !options.force_retrain) {
    return update;
  }

  // Every validated document, in a deterministic order.
  std::vector<const CuratedDocument*> training;
  for (const CuratedDocument& d : previously_validated) training.push_back(&d);
  for (const CuratedDocument& d : newly_validated) training.push_back(&d);
  std::sort(training.begin(), training.end(),
            [](const CuratedDocument* a, const CuratedDocument* b) {
              return a->doc_id < b->doc_id;
            });
  training.erase(std::unique(training.begin(), training.end(),
                             [](const CuratedDocument* a,
                                const CuratedDocument* b) {
                               return a->doc_id == b->doc_id;
                             }),
                 training.end());

  features::FontDictionary new_fonts = fonts;
  std::vector<features::ClassifierInput> inputs;
  std::vector<LayoutLabel> labels;
  TrainingMetadata meta;
  meta.source_id = state.source_id;
  for (const CuratedDocument* doc : training) {
    meta.training_docs.push_back(doc->doc_id);
    for (const CuratedBlock& b : doc->blocks) {
      if (!b.fv.text) continue;
      new_fonts.Register(b.fv.text->f16);
    }
  }
  for (const CuratedDocument* doc : training) {
    for (const CuratedBlock& b : doc->blocks) {
      auto in = features::NormalizeForClassifier(b.fv, b.page, new_fonts);
      if (!in.ok()) continue;
      inputs.push_back(*in);
      labels.push_back(b.label);
    }
  }
  auto model = ForestModel::Train(inputs, labels, options.forest, meta,
                                  &update.warnings);
  if (!model.ok()) return model.status();
  auto shared = std::make_shared<const ForestModel>(*std::move(model));

  // Predict into copies first so a failure leaves `pending` untouched.
  std::vector<CuratedDocument> relabeled(pending.begin(), pending.end());
  for (CuratedDocument& doc : relabeled) {
    static const HeuristicRuleSet kUnused;
    if (auto s = LabelDocument(kUnused, shared.get(), new_fonts, &doc);
        !s.ok()) {
      return s;
    }
  }
  for (size_t i = 0; i < pending.size(); ++i) {
    pending[i] = std::move(relabeled[i]);
    update.relabeled_docs.push_back(pending[i].doc_id);
  }
  update.state.model_version = state.model_version + 1;
  update.state.mode = LabelingMode::kModel;
  update.retrained = true;
  update.model = std::move(shared);
  update.fonts = std::move(new_fonts);
  LOG(INFO) << "source " << state.source_id << ": trained model v"
            << update.state.model_version << " on " << inputs.size()
            << " blocks from " << training.size() << " documents";
  return update;
}

absl::Status LabelDocument(const HeuristicRuleSet& rules,
                           const ForestModel* model,
                           const features::FontDictionary& fonts,
                           CuratedDocument* doc) {
  for (CuratedBlock& b : doc->blocks) {
    if (b.fv.b != BlockKind::kText) continue;
    if (model == nullptr) {
      b.label = ApplyRules(rules, b.fv);
      b.origin = LabelOrigin::kHeuristic;
      b.confidence = 1.0;
      b.fv.l = b.label;
      continue;
    }
    auto in = features::NormalizeForClassifier(b.fv, b.page, fonts);
    if (!in.ok()) return in.status();
    auto pred = model->Predict(*in);
    if (!pred.ok()) return pred.status();
    b.label = pred->label;
    b.origin = LabelOrigin::kModel;
    b.confidence = pred->confidence;
    b.fv.l = b.label;
  }
  return absl::OkStatus();
}

}  // namespace dla::labeler
