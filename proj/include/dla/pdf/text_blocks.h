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

// Text normalization, line grouping and line-to-block merging.

#ifndef DLA_PDF_TEXT_BLOCKS_H_
#define DLA_PDF_TEXT_BLOCKS_H_

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dla/core/layout.h"

namespace dla::pdf {

// Replaces U+FFFF and line breaks with spaces, collapses whitespace runs and
// trims.
std::string PreprocessText(std::string_view raw);

// Collapses word-level spans into one span per line reference. Words are
// ordered by x0 and joined with single spaces; the output bbox is the union
// of the words. Styling is taken from the leftmost word.
std::vector<TextSpan> ReconstructSpacelessText(std::span<const TextSpan> words);

// Assigns `line_id` to every span and reorders spans by line, then by x0.
// Spans share a line when they have the same direction, overlap vertically
// by at least half the shorter height and follow each other without a gap
// wider than `max_gap_em` times the font size.
void AssignLineIds(std::vector<TextSpan>* spans, double max_gap_em = 1.5);

struct TextLine {
  std::vector<TextSpan> spans;  // Ordered along the line.
  BoundingBox bbox;
  std::string text;
  std::set<std::string> fonts;
  bool bold = false;    // Strict majority of tokens.
  bool italic = false;  // Strict majority of tokens.
  int direction = 0;
};

// Groups spans (with line ids assigned) into lines, preserving span order.
std::vector<TextLine> BuildLines(std::span<const TextSpan> spans);

// Concatenates spans of one line. A space is inserted where the horizontal
// gap exceeds 0.15 em and neither side already carries whitespace.
std::string LineText(std::span<const TextSpan> spans);

// A payload token with the span that holds its first character.
struct AttributedToken {
  std::string text;
  int span_index = -1;
};

// Splits a preprocessed payload into space-separated tokens and attributes
// each to its span by walking the non-whitespace characters of `spans`.
std::vector<AttributedToken> AttributeTokens(std::string_view payload,
                                             std::span<const TextSpan> spans);

// Mean span font size over the payload tokens.
double TokenWeightedFontSize(std::string_view payload,
                             std::span<const TextSpan> spans);

struct MergeOptions {
  // Maximum vertical gap between merged lines, as a multiple of the page's
  // median line height.
  double gap_factor = 0.6;
  // Vertical bucket (points) of the reading-order key.
  double line_quantum = 3.0;
};

// Reading-order key (round(y0 / quantum), x0).
std::pair<long, double> ReadingOrderKey(const BoundingBox& b, double quantum);

// Merges the page's lines into Text blocks in reading order. Lines join the
// nearest open block above them that overlaps horizontally, lies within the
// gap limit and has identical font names, bold and italic flags. Blocks get
// ids p<page>_b<k>, label Body and origin heuristic.
std::vector<LayoutBlock> MergeLinesIntoBlocks(std::span<const TextSpan> spans,
                                              const PageGeometry& g,
                                              const MergeOptions& options = {});

}  // namespace dla::pdf

#endif  // DLA_PDF_TEXT_BLOCKS_H_
