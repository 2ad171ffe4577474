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

#include "dla/eval/score.h"

#include <algorithm>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dla/core/strings.h"

namespace dla::eval {
namespace {

double Ratio(int num, int den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / den;
}

std::string BoxText(const BoundingBox& b) {
  return absl::StrFormat("[%.2f %.2f %.2f %.2f]", b.x0, b.y0, b.x1, b.y1);
}

}  // namespace

double ExtractionScore::Recall() const { return Ratio(matched, expected); }
double ExtractionScore::Precision() const { return Ratio(matched, extracted); }
double ExtractionScore::LabelAccuracy() const {
  return Ratio(label_correct, text_matched);
}
double ExtractionScore::CellAccuracy() const {
  return Ratio(cells_correct, cells_expected);
}

void ExtractionScore::Add(const ExtractionScore& o, size_t max_notes) {
  expected += o.expected;
  extracted += o.extracted;
  matched += o.matched;
  text_matched += o.text_matched;
  label_correct += o.label_correct;
  tables_expected += o.tables_expected;
  tables_matched += o.tables_matched;
  table_shape_correct += o.table_shape_correct;
  cells_expected += o.cells_expected;
  cells_correct += o.cells_correct;
  for (const std::string& n : o.notes) {
    if (notes.size() >= max_notes) break;
    notes.push_back(n);
  }
}

nlohmann::json ExtractionScore::ToJson() const {
  return {{"expected", expected},
          {"extracted", extracted},
          {"matched", matched},
          {"recall", Recall()},
          {"precision", Precision()},
          {"text_matched", text_matched},
          {"label_accuracy", LabelAccuracy()},
          {"tables_expected", tables_expected},
          {"tables_matched", tables_matched},
          {"table_shape_correct", table_shape_correct},
          {"cells_expected", cells_expected},
          {"cells_correct", cells_correct},
          {"cell_accuracy", CellAccuracy()},
          {"notes", notes}};
}

std::vector<std::pair<int, int>> MatchBlocks(
    const SynthManifest& truth, const corpus::DocumentLayout& layout) {
  std::vector<std::tuple<double, int, int>> candidates;
  for (size_t i = 0; i < truth.blocks.size(); ++i) {
    const SynthBlock& t = truth.blocks[i];
    for (size_t j = 0; j < layout.records.size(); ++j) {
      const corpus::LayoutRecord& r = layout.records[j];
      if (r.page.page_index != t.page || r.block.kind != t.kind) continue;
      const double iou = IntersectionOverUnion(t.bbox, r.block.bbox);
      if (iou >= kMatchIou) {
        candidates.emplace_back(iou, static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) {
              if (std::get<0>(a) != std::get<0>(b)) {
                return std::get<0>(a) > std::get<0>(b);
              }
              return std::tie(std::get<1>(a), std::get<2>(a)) <
                     std::tie(std::get<1>(b), std::get<2>(b));
            });
  std::vector<bool> used_truth(truth.blocks.size());
  std::vector<bool> used_extracted(layout.records.size());
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [iou, i, j] : candidates) {
    if (used_truth[i] || used_extracted[j]) continue;
    used_truth[i] = true;
    used_extracted[j] = true;
    pairs.emplace_back(i, j);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

ExtractionScore ScoreDocument(const SynthManifest& truth,
                              const corpus::DocumentLayout& layout,
                              size_t max_notes) {
  ExtractionScore s;
  s.expected = static_cast<int>(truth.blocks.size());
  s.extracted = static_cast<int>(layout.records.size());
  const auto pairs = MatchBlocks(truth, layout);
  s.matched = static_cast<int>(pairs.size());
  auto note = [&](std::string text) {
    if (s.notes.size() < max_notes) {
      s.notes.push_back(absl::StrCat(truth.file_name, ": ", text));
    }
  };

  std::vector<int> match_of(truth.blocks.size(), -1);
  std::vector<bool> extracted_used(layout.records.size());
  for (const auto& [i, j] : pairs) {
    match_of[i] = j;
    extracted_used[j] = true;
  }
  for (size_t i = 0; i < truth.blocks.size(); ++i) {
    const SynthBlock& t = truth.blocks[i];
    if (t.kind == BlockKind::kTable) {
      ++s.tables_expected;
      int rows = static_cast<int>(t.cells.size());
      int cols = rows > 0 ? static_cast<int>(t.cells[0].size()) : 0;
      s.cells_expected += rows * cols;
    }
    if (match_of[i] < 0) {
      note(absl::StrCat("missed ", ToAbsl(BlockKindName(t.kind)), " on page ", t.page,
                        " at ", BoxText(t.bbox), " '", t.text.substr(0, 40),
                        "'"));
      continue;
    }
    const corpus::LayoutRecord& r = layout.records[match_of[i]];
    if (t.kind == BlockKind::kText) {
      ++s.text_matched;
      if (r.block.label == t.label) ++s.label_correct;
    }
    if (t.kind == BlockKind::kTable && r.table) {
      ++s.tables_matched;
      const auto& cells = r.table->cells;
      if (cells.size() == t.cells.size() &&
          (cells.empty() || cells[0].size() == t.cells[0].size())) {
        ++s.table_shape_correct;
        for (size_t row = 0; row < cells.size(); ++row) {
          for (size_t col = 0; col < cells[row].size(); ++col) {
            if (cells[row][col] == t.cells[row][col]) {
              ++s.cells_correct;
            } else {
              note(absl::StrCat("cell (", row, ",", col, ") on page ", t.page,
                                ": got '", cells[row][col], "' want '",
                                t.cells[row][col], "'"));
            }
          }
        }
      } else {
        note(absl::StrCat("table on page ", t.page, " is ", cells.size(), "x",
                          cells.empty() ? 0 : cells[0].size(), ", want ",
                          t.cells.size(), "x",
                          t.cells.empty() ? 0 : t.cells[0].size()));
      }
    }
  }
  for (size_t j = 0; j < layout.records.size(); ++j) {
    if (extracted_used[j]) continue;
    const corpus::LayoutRecord& r = layout.records[j];
    note(absl::StrCat("spurious ", ToAbsl(BlockKindName(r.block.kind)), " ",
                      r.block.block_id, " at ", BoxText(r.block.bbox), " '",
                      r.block.payload.value_or("").substr(0, 40), "'"));
  }
  return s;
}

}  // namespace dla::eval
