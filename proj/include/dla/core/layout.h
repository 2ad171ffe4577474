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

// Domain types and box geometry shared by every stage of the pipeline.
//
// All coordinates are PDF points (1/72 inch) in a page frame whose origin is
// the top-left corner of the page, with y growing downward.

#ifndef DLA_CORE_LAYOUT_H_
#define DLA_CORE_LAYOUT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace dla {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Axis-aligned box. A valid box has finite coordinates with x0 <= x1 and
// y0 <= y1.
struct BoundingBox {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  // Validating constructor; rejects inverted or non-finite boxes.
  static absl::StatusOr<BoundingBox> Create(double x0, double y0, double x1,
                                            double y1);
  // Smallest box containing both corners, in any order.
  static BoundingBox FromCorners(Point a, Point b);

  bool IsValid() const;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  BoundingBox Translated(double dx, double dy) const {
    return {x0 + dx, y0 + dy, x1 + dx, y1 + dy};
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

double Area(const BoundingBox& b);

// Smallest box covering both.
BoundingBox Union(const BoundingBox& a, const BoundingBox& b);

// Overlapping region, or nullopt when the boxes do not share positive area.
std::optional<BoundingBox> Intersection(const BoundingBox& a,
                                        const BoundingBox& b);

// area(a ∩ b) / area(a). Zero when `a` has zero area.
double OverlapFraction(const BoundingBox& a, const BoundingBox& b);

// area(a ∩ b) / area(a ∪ b); zero when both boxes are degenerate.
double IntersectionOverUnion(const BoundingBox& a, const BoundingBox& b);

Point Center(const BoundingBox& b);

bool Contains(const BoundingBox& b, Point p);

struct PageGeometry {
  int page_index = 0;
  double width = 0.0;
  double height = 0.0;
  int rotation = 0;  // One of 0, 90, 180, 270.

  bool IsValid() const;
  BoundingBox Bounds() const { return {0.0, 0.0, width, height}; }

  friend bool operator==(const PageGeometry&, const PageGeometry&) = default;
};

// Distances from a block to the four page limits.
struct PageMargins {
  double left = 0.0;
  double top = 0.0;
  double right = 0.0;
  double bottom = 0.0;

  friend bool operator==(const PageMargins&, const PageMargins&) = default;
};

// Margins of `b` on page `g`. Boxes reaching beyond the page produce the
// clamped (non-negative) margins and set `*clipped` when given.
PageMargins ComputePageMargins(const BoundingBox& b, const PageGeometry& g,
                               bool* clipped = nullptr);

enum class BlockKind : int { kImage = 0, kTable = 1, kLink = 2, kText = 3 };

enum class LayoutLabel : int {
  kImage = 0,
  kTable = 1,
  kLink = 2,
  kIdentifier = 3,
  kTitle = 4,
  kSummary = 5,
  kBody = 6,
};

enum class LabelOrigin { kHeuristic, kModel, kHuman };

inline constexpr int kNumTextLabels = 4;
inline constexpr LayoutLabel kTextLabels[kNumTextLabels] = {
    LayoutLabel::kIdentifier, LayoutLabel::kTitle, LayoutLabel::kSummary,
    LayoutLabel::kBody};

absl::StatusOr<BlockKind> BlockKindFromCode(int code);
absl::StatusOr<LayoutLabel> LayoutLabelFromCode(int code);

inline int Code(BlockKind k) { return static_cast<int>(k); }
inline int Code(LayoutLabel l) { return static_cast<int>(l); }

bool IsTextLabel(LayoutLabel label);

// Image/table/link labels mirror their block kind; text blocks carry one of
// the four text categories.
bool IsConsistent(BlockKind kind, LayoutLabel label);

// The fixed label of a non-text kind.
LayoutLabel LabelForKind(BlockKind kind);

std::string_view BlockKindName(BlockKind kind);
std::string_view LayoutLabelName(LayoutLabel label);
std::string_view LabelOriginName(LabelOrigin origin);
absl::StatusOr<LayoutLabel> ParseLayoutLabel(std::string_view name);
absl::StatusOr<LabelOrigin> ParseLabelOrigin(std::string_view name);

struct TextSpan {
  std::string text;
  std::string font_name;
  double font_size = 0.0;
  bool bold = false;
  bool italic = false;
  BoundingBox bbox;
  int line_id = 0;
  // Writing direction in degrees clockwise in the page frame
  // (0 = left-to-right, 90 = top-to-bottom, 270 = bottom-to-top).
  int direction = 0;

  friend bool operator==(const TextSpan&, const TextSpan&) = default;
};

struct LayoutBlock {
  std::string block_id;
  BlockKind kind = BlockKind::kText;
  LayoutLabel label = LayoutLabel::kBody;
  BoundingBox bbox;
  int page_index = 0;
  // Preprocessed text, table CSV path, or link URI. Absent for images.
  std::optional<std::string> payload;
  std::vector<TextSpan> spans;
  LabelOrigin label_origin = LabelOrigin::kHeuristic;
  bool clipped = false;

  friend bool operator==(const LayoutBlock&, const LayoutBlock&) = default;
};

// Checks the block-level invariants: valid box, payload presence by kind, and
// label/kind consistency.
absl::Status ValidateBlock(const LayoutBlock& block);

}  // namespace dla

#endif  // DLA_CORE_LAYOUT_H_
