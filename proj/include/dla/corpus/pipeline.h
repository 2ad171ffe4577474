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

// PDF bytes to labeled layout records: extraction, table detection, line
// merging, overlap suppression, featurization and labeling.

#ifndef DLA_CORPUS_PIPELINE_H_
#define DLA_CORPUS_PIPELINE_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/corpus/record.h"
#include "dla/labeler/forest.h"
#include "dla/labeler/rules.h"
#include "dla/pdf/extract.h"
#include "dla/pdf/text_blocks.h"
#include "dla/table/table.h"

namespace dla::corpus {

// What labels text blocks: the forest when `model` is set, else the rules.
struct Labeler {
  const labeler::HeuristicRuleSet* rules = nullptr;
  const labeler::ForestModel* model = nullptr;
  const features::FontDictionary* fonts = nullptr;
  int model_version = 0;
};

struct PipelineOptions {
  pdf::ExtractOptions extract;
  pdf::MergeOptions merge;
  table::DetectOptions tables;
  double suppress_threshold = 0.7;
};

struct PipelineResult {
  std::string content_hash;
  std::optional<absl::CivilDay> publication_date;
  DocumentLayout layout;
  std::vector<std::string> warnings;
};

// Corpus-relative path of a table's cell export.
std::string TableCsvPath(std::string_view doc_id, int page, int k);

absl::StatusOr<PipelineResult> RunPipeline(std::string_view pdf_bytes,
                                           std::string_view source_id,
                                           const PipelineOptions& options,
                                           const Labeler& labeler);

// Labels every text record whose label is not human-provided.
absl::Status LabelLayout(const Labeler& labeler, DocumentLayout* layout);

}  // namespace dla::corpus

#endif  // DLA_CORPUS_PIPELINE_H_
