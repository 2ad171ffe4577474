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

// Extraction scoring against generator manifests.

#ifndef DLA_EVAL_SCORE_H_
#define DLA_EVAL_SCORE_H_

#include <string>
#include <vector>

#include "dla/corpus/record.h"
#include "dla/eval/synth.h"
#include "json.hpp"

namespace dla::eval {

inline constexpr double kMatchIou = 0.9;

struct ExtractionScore {
  int expected = 0;
  int extracted = 0;
  int matched = 0;
  // Matched text blocks and how many carry the manifest label.
  int text_matched = 0;
  int label_correct = 0;
  int tables_expected = 0;
  int tables_matched = 0;
  int table_shape_correct = 0;
  int cells_expected = 0;
  int cells_correct = 0;
  // Human-readable notes on the first few misses.
  std::vector<std::string> notes;

  double Recall() const;
  double Precision() const;
  double LabelAccuracy() const;
  double CellAccuracy() const;
  void Add(const ExtractionScore& other, size_t max_notes = 50);

  nlohmann::json ToJson() const;
};

// Matches extracted blocks to manifest blocks one-to-one, per page and kind,
// greedily by descending IoU; pairs below kMatchIou never match.
ExtractionScore ScoreDocument(const SynthManifest& truth,
                              const corpus::DocumentLayout& layout,
                              size_t max_notes = 10);

// Index pairs (truth, extracted) of the matching used by ScoreDocument.
std::vector<std::pair<int, int>> MatchBlocks(
    const SynthManifest& truth, const corpus::DocumentLayout& layout);

}  // namespace dla::eval

#endif  // DLA_EVAL_SCORE_H_
