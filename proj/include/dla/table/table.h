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

// Ruled (lattice) table detection from page line art.

#ifndef DLA_TABLE_TABLE_H_
#define DLA_TABLE_TABLE_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/core/layout.h"
#include "dla/pdf/extract.h"

namespace dla::table {

struct TableGrid {
  // Page-frame hull of the ruling lines.
  BoundingBox bbox;
  // Sorted boundaries. Page-frame y and x values for unrotated tables; after
  // NormalizeRotatedTable they are coordinates in the logical (unrotated)
  // frame produced by RotatePoint.
  std::vector<double> row_boundaries;
  std::vector<double> col_boundaries;
  // cells[row][col], rows x cols.
  std::vector<std::vector<std::string>> cells;
  int rotation = 0;  // 0, 90 or 270.

  int rows() const { return static_cast<int>(row_boundaries.size()) - 1; }
  int cols() const { return static_cast<int>(col_boundaries.size()) - 1; }

  friend bool operator==(const TableGrid&, const TableGrid&) = default;
};

struct DetectOptions {
  double angle_tolerance_deg = 1.0;
  double endpoint_tolerance = 2.0;
};

// Finds connected groups of horizontal and vertical rules with at least two
// of each and turns them into grids. Cell text is the reading-order
// concatenation of the spans whose centers fall inside the cell. Rotation is
// the majority direction of the spans inside the table.
std::vector<TableGrid> DetectTables(std::span<const pdf::Segment> segments,
                                    std::span<const TextSpan> spans,
                                    const PageGeometry& g,
                                    const DetectOptions& options = {});

// Maps a page-frame point into the frame of a table rotated by `rotation`
// degrees: 90 -> (y, W - x), 270 -> (H - y, x), 0 -> identity.
Point RotatePoint(Point p, int rotation, const PageGeometry& g);
// Inverse of RotatePoint.
Point UnrotatePoint(Point p, int rotation, const PageGeometry& g);

// Re-indexes cells so that cell (0, 0) is the logical top-left cell and
// expresses the boundaries in the logical frame. The bbox stays in the page
// frame. Tables with rotation 0 are returned unchanged.
TableGrid NormalizeRotatedTable(const TableGrid& t, const PageGeometry& g);

// RFC 4180 text with LF line endings, one record per grid row.
std::string CellsToCsv(const TableGrid& t);

// Writes CellsToCsv(t) to `path`, creating parent directories, and returns
// the path.
absl::StatusOr<std::string> ExportCells(const TableGrid& t,
                                        const std::string& path);

// Removes text blocks whose overlap fraction with any table exceeds
// `threshold`.
std::vector<LayoutBlock> SuppressOverlappingText(
    std::vector<LayoutBlock> text_blocks, std::span<const TableGrid> tables,
    double threshold = 0.7);

}  // namespace dla::table

#endif  // DLA_TABLE_TABLE_H_
