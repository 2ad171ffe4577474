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

// Annotated page overlays: one SVG per page, boxes stroked in the label
// color, plus the JSON page view served to the review UI.

#ifndef DLA_CORPUS_OVERLAY_H_
#define DLA_CORPUS_OVERLAY_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "dla/corpus/record.h"
#include "dla/corpus/store.h"
#include "json.hpp"

namespace dla::corpus {

// Identifier green, Title pink, Summary cyan, Body black; images orange,
// tables blue, links violet.
std::string_view OverlayColor(const LayoutBlock& b);

// Shortest decimal that parses back to exactly `v`.
std::string ExactNumber(double v);

// Page view geometry (top-left origin, points). Records of other pages are
// ignored; a page without records yields an SVG with no rectangles.
std::string RenderPageSvg(const DocumentLayout& layout, int page_index);

// {block_id, B, L, label, origin, confidence, model_version, bbox, color,
// text}.
nlohmann::json BlockView(const LayoutRecord& r);

// {doc_id, source_id, page, page_count, width, height, rotation, blocks}.
nlohmann::json PageView(const DocumentLayout& layout, int page_index);

// Writes overlays/<doc_id>/p<n>.svg for every page; returns the page count.
absl::StatusOr<int> WriteOverlays(const CorpusStore& store,
                                  std::string_view doc_id);

}  // namespace dla::corpus

#endif  // DLA_CORPUS_OVERLAY_H_
