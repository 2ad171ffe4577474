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

#include "dla/core/layout.h"
#include "dla/core/strings.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dla {

absl::StatusOr<BoundingBox> BoundingBox::Create(double x0, double y0,
                                                double x1, double y1) {
  BoundingBox b{x0, y0, x1, y1};
  if (!b.IsValid()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "invalid bounding box (", x0, ", ", y0, ", ", x1, ", ", y1, ")"));
  }
  return b;
}

BoundingBox BoundingBox::FromCorners(Point a, Point b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x),
          std::max(a.y, b.y)};
}

bool BoundingBox::IsValid() const {
  return std::isfinite(x0) && std::isfinite(y0) && std::isfinite(x1) &&
         std::isfinite(y1) && x0 <= x1 && y0 <= y1;
}

double Area(const BoundingBox& b) { return (b.x1 - b.x0) * (b.y1 - b.y0); }

BoundingBox Union(const BoundingBox& a, const BoundingBox& b) {
  return {std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1),
          std::max(a.y1, b.y1)};
}

std::optional<BoundingBox> Intersection(const BoundingBox& a,
                                        const BoundingBox& b) {
  BoundingBox r{std::max(a.x0, b.x0), std::max(a.y0, b.y0),
                std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
  if (r.x0 >= r.x1 || r.y0 >= r.y1) return std::nullopt;
  return r;
}

double OverlapFraction(const BoundingBox& a, const BoundingBox& b) {
  const double area_a = Area(a);
  if (area_a <= 0.0) return 0.0;
  const auto inter = Intersection(a, b);
  if (!inter) return 0.0;
  return std::clamp(Area(*inter) / area_a, 0.0, 1.0);
}

double IntersectionOverUnion(const BoundingBox& a, const BoundingBox& b) {
  const auto inter = Intersection(a, b);
  if (!inter) return 0.0;
  const double i = Area(*inter);
  const double u = Area(a) + Area(b) - i;
  return u > 0.0 ? i / u : 0.0;
}

Point Center(const BoundingBox& b) {
  return {(b.x0 + b.x1) / 2.0, (b.y0 + b.y1) / 2.0};
}

bool Contains(const BoundingBox& b, Point p) {
  return p.x >= b.x0 && p.x <= b.x1 && p.y >= b.y0 && p.y <= b.y1;
}

bool PageGeometry::IsValid() const {
  return page_index >= 0 && width > 0.0 && height > 0.0 &&
         std::isfinite(width) && std::isfinite(height) &&
         (rotation == 0 || rotation == 90 || rotation == 180 ||
          rotation == 270);
}

PageMargins ComputePageMargins(const BoundingBox& b, const PageGeometry& g,
                               bool* clipped) {
  PageMargins m{b.x0, b.y0, g.width - b.x1, g.height - b.y1};
  const bool outside = m.left < 0 || m.top < 0 || m.right < 0 || m.bottom < 0;
  if (outside) {
    m.left = std::max(m.left, 0.0);
    m.top = std::max(m.top, 0.0);
    m.right = std::max(m.right, 0.0);
    m.bottom = std::max(m.bottom, 0.0);
  }
  if (clipped != nullptr) *clipped = outside;
  return m;
}

absl::StatusOr<BlockKind> BlockKindFromCode(int code) {
  if (code < 0 || code > 3) {
    return absl::InvalidArgumentError(absl::StrCat("bad block code ", code));
  }
  return static_cast<BlockKind>(code);
}

absl::StatusOr<LayoutLabel> LayoutLabelFromCode(int code) {
  if (code < 0 || code > 6) {
    return absl::InvalidArgumentError(absl::StrCat("bad label code ", code));
  }
  return static_cast<LayoutLabel>(code);
}

bool IsTextLabel(LayoutLabel label) { return Code(label) >= 3; }

bool IsConsistent(BlockKind kind, LayoutLabel label) {
  if (kind == BlockKind::kText) return IsTextLabel(label);
  return Code(kind) == Code(label);
}

LayoutLabel LabelForKind(BlockKind kind) {
  return kind == BlockKind::kText ? LayoutLabel::kBody
                                  : static_cast<LayoutLabel>(Code(kind));
}

std::string_view BlockKindName(BlockKind kind) {
  switch (kind) {
    case BlockKind::kImage:
      return "image";
    case BlockKind::kTable:
      return "table";
    case BlockKind::kLink:
      return "link";
    case BlockKind::kText:
      return "text";
  }
  return "?";
}

std::string_view LayoutLabelName(LayoutLabel label) {
  switch (label) {
    case LayoutLabel::kImage:
      return "image";
    case LayoutLabel::kTable:
      return "table";
    case LayoutLabel::kLink:
      return "link";
    case LayoutLabel::kIdentifier:
      return "identifier";
    case LayoutLabel::kTitle:
      return "title";
    case LayoutLabel::kSummary:
      return "summary";
    case LayoutLabel::kBody:
      return "body";
  }
  return "?";
}

std::string_view LabelOriginName(LabelOrigin origin) {
  switch (origin) {
    case LabelOrigin::kHeuristic:
      return "heuristic";
    case LabelOrigin::kModel:
      return "model";
    case LabelOrigin::kHuman:
      return "human";
  }
  return "?";
}

absl::StatusOr<LayoutLabel> ParseLayoutLabel(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  for (int code = 0; code <= 6; ++code) {
    const auto label = static_cast<LayoutLabel>(code);
    if (lower == LayoutLabelName(label)) return label;
  }
  if (lower == "id") return LayoutLabel::kIdentifier;
  if (lower == "main" || lower == "maintext") return LayoutLabel::kBody;
  return absl::InvalidArgumentError(absl::StrCat("unknown label '", ToAbsl(name), "'"));
}

absl::StatusOr<LabelOrigin> ParseLabelOrigin(std::string_view name) {
  if (name == "heuristic") return LabelOrigin::kHeuristic;
  if (name == "model") return LabelOrigin::kModel;
  if (name == "human") return LabelOrigin::kHuman;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown label origin '", ToAbsl(name), "'"));
}

absl::Status ValidateBlock(const LayoutBlock& block) {
  if (!block.bbox.IsValid()) {
    return absl::InvalidArgumentError(
        absl::StrCat("block ", block.block_id, ": invalid bbox"));
  }
  if (!IsConsistent(block.kind, block.label)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "block ", block.block_id, ": label ", Code(block.label),
        " inconsistent with block kind ", Code(block.kind)));
  }
  const bool wants_payload = block.kind != BlockKind::kImage;
  if (block.payload.has_value() != wants_payload) {
    return absl::InvalidArgumentError(
        absl::StrCat("block ", block.block_id, ": payload ",
                     wants_payload ? "missing" : "not allowed", " for ",
                     ToAbsl(BlockKindName(block.kind))));
  }
  return absl::OkStatus();
}

}  // namespace dla
