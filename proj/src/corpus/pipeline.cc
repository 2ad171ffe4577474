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

#include "dla/corpus/pipeline.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "dla/core/strings.h"

namespace dla::corpus {

std::string TableCsvPath(std::string_view doc_id, int page, int k) {
  return absl::StrCat("tables/", ToAbsl(doc_id), "/p", page, "_t", k, ".csv");
}

absl::Status LabelLayout(const Labeler& labeler, DocumentLayout* layout) {
  if (labeler.model == nullptr && labeler.rules == nullptr) {
    return absl::InvalidArgumentError("labeler has neither rules nor model");
  }
  static const features::FontDictionary kNoFonts;
  const features::FontDictionary& fonts =
      labeler.fonts != nullptr ? *labeler.fonts : kNoFonts;
  for (LayoutRecord& r : layout->records) {
    if (r.block.kind != BlockKind::kText) continue;
    if (r.block.label_origin == LabelOrigin::kHuman) continue;
    if (labeler.model != nullptr) {
      auto in = features::NormalizeForClassifier(r.fv, r.page, fonts);
      if (!in.ok()) return in.status();
      auto pred = labeler.model->Predict(*in);
      if (!pred.ok()) return pred.status();
      r.block.label = pred->label;
      r.block.label_origin = LabelOrigin::kModel;
      r.confidence = pred->confidence;
      r.model_version = labeler.model_version;
    } else {
      r.block.label = labeler::ApplyRules(*labeler.rules, r.fv);
      r.block.label_origin = LabelOrigin::kHeuristic;
      r.confidence = 1.0;
      r.model_version = 0;
    }
    r.fv.l = r.block.label;
  }
  return absl::OkStatus();
}

absl::StatusOr<PipelineResult> RunPipeline(std::string_view pdf_bytes,
                                           std::string_view source_id,
                                           const PipelineOptions& options,
                                           const Labeler& labeler) {
  auto parsed = pdf::ParseDocument(pdf_bytes, source_id, options.extract);
  if (!parsed.ok()) return parsed.status();
  PipelineResult result;
  result.content_hash = parsed->content_hash;
  result.publication_date = parsed->publication_date;
  result.warnings = parsed->warnings;
  DocumentLayout& layout = result.layout;
  layout.doc_id = parsed->doc_id;
  layout.source_id = std::string(source_id);

  for (const pdf::ParsedPage& page : parsed->pages) {
    const PageGeometry& g = page.geometry;
    layout.pages.push_back(g);
    for (const std::string& w : page.warnings) result.warnings.push_back(w);

    std::vector<table::TableGrid> tables =
        table::DetectTables(page.segments, page.spans, g, options.tables);
    for (table::TableGrid& t : tables) {
      if (t.rotation != 0) t = table::NormalizeRotatedTable(t, g);
    }
    std::vector<LayoutBlock> text = table::SuppressOverlappingText(
        pdf::MergeLinesIntoBlocks(page.spans, g, options.merge), tables,
        options.suppress_threshold);

    struct Pending {
      LayoutBlock block;
      std::optional<table::TableGrid> table;
    };
    std::vector<Pending> blocks;
    for (LayoutBlock& b : text) blocks.push_back({std::move(b), std::nullopt});
    for (size_t k = 0; k < tables.size(); ++k) {
      LayoutBlock b;
      b.block_id = absl::StrCat("p", g.page_index, "_t", k);
      b.kind = BlockKind::kTable;
      b.label = LayoutLabel::kTable;
      b.bbox = tables[k].bbox;
      b.page_index = g.page_index;
      b.payload = TableCsvPath(layout.doc_id, g.page_index, static_cast<int>(k));
      ComputePageMargins(b.bbox, g, &b.clipped);
      blocks.push_back({std::move(b), tables[k]});
    }
    for (const LayoutBlock& b : page.image_blocks) blocks.push_back({b, {}});
    for (const LayoutBlock& b : page.link_blocks) blocks.push_back({b, {}});
    std::stable_sort(blocks.begin(), blocks.end(),
                     [&](const Pending& a, const Pending& b) {
                       const auto ka = pdf::ReadingOrderKey(
                           a.block.bbox, options.merge.line_quantum);
                       const auto kb = pdf::ReadingOrderKey(
                           b.block.bbox, options.merge.line_quantum);
                       if (ka != kb) return ka < kb;
                       return Code(a.block.kind) < Code(b.block.kind);
                     });

    for (Pending& p : blocks) {
      auto fv = features::ComputeFeatures(p.block, g);
      if (!fv.ok()) {
        result.warnings.push_back(absl::StrCat(
            "page ", g.page_index, ": dropped block ", p.block.block_id, ": ",
            fv.status().message()));
        continue;
      }
      LayoutRecord r;
      r.doc_id = layout.doc_id;
      r.source_id = layout.source_id;
      r.page = g;
      r.block = std::move(p.block);
      r.block.spans.clear();
      r.fv = *std::move(fv);
      r.table = std::move(p.table);
      layout.records.push_back(std::move(r));
    }
  }
  if (auto s = LabelLayout(labeler, &layout); !s.ok()) return s;
  return result;
}

}  // namespace dla::corpus
