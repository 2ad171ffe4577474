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

#include "dla/table/table.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "gtest/gtest.h"
#include "tests/testing/test_util.h"

namespace dla::table {
namespace {

constexpr PageGeometry kA4{0, 595, 842, 0};

struct Grid {
  std::vector<pdf::Segment> segments;
  std::vector<TextSpan> spans;
  std::vector<std::vector<std::string>> cells;
};

// A ruled grid with its top-left corner at (x, y) and one span per cell.
Grid MakeGrid(double x, double y, int rows, int cols, double cell_w = 60,
              double cell_h = 18, const std::string& tag = "") {
  Grid g;
  const double w = cols * cell_w, h = rows * cell_h;
  for (int r = 0; r <= rows; ++r) {
    g.segments.push_back({{x, y + r * cell_h}, {x + w, y + r * cell_h}, 0.5});
  }
  for (int c = 0; c <= cols; ++c) {
    g.segments.push_back({{x + c * cell_w, y}, {x + c * cell_w, y + h}, 0.5});
  }
  g.cells.assign(rows, std::vector<std::string>(cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      TextSpan s;
      s.text = absl::StrCat(tag, "r", r, "c", c);
      s.font_name = "Courier";
      s.font_size = 8;
      const double x0 = x + c * cell_w + 4, y0 = y + r * cell_h + 5;
      s.bbox = {x0, y0, x0 + 30, y0 + 8};
      g.spans.push_back(s);
      g.cells[r][c] = s.text;
    }
  }
  return g;
}

LayoutBlock TextAt(const BoundingBox& b) {
  LayoutBlock block;
  block.kind = BlockKind::kText;
  block.label = LayoutLabel::kBody;
  block.bbox = b;
  block.payload = "x";
  return block;
}

TEST(DetectTablesTest, ThreeByFourGrid) {
  const Grid g = MakeGrid(72, 100, 3, 4);
  const std::vector<TableGrid> tables =
      DetectTables(g.segments, g.spans, kA4);
  ASSERT_EQ(tables.size(), 1u);
  EXPECT_EQ(tables[0].rows(), 3);
  EXPECT_EQ(tables[0].cols(), 4);
  EXPECT_EQ(tables[0].cells, g.cells);
  EXPECT_EQ(tables[0].bbox, (BoundingBox{72, 100, 312, 154}));
  EXPECT_EQ(tables[0].rotation, 0);
}

TEST(DetectTablesTest, SingleRuleIsNotATable) {
  const std::vector<pdf::Segment> rule = {{{72, 100}, {520, 100}, 0.5}};
  EXPECT_TRUE(DetectTables(rule, {}, kA4).empty());
}

TEST(DetectTablesTest, BoxWithoutInnerLinesIsOneCell) {
  const Grid g = MakeGrid(100, 100, 1, 1);
  const std::vector<TableGrid> tables =
      DetectTables(g.segments, g.spans, kA4);
  ASSERT_EQ(tables.size(), 1u);
  EXPECT_EQ(tables[0].cells, g.cells);
}

TEST(DetectTablesTest, TwoDisjointTables) {
  Grid a = MakeGrid(72, 100, 2, 3, 60, 18, "a");
  const Grid b = MakeGrid(72, 400, 4, 2, 60, 18, "b");
  a.segments.insert(a.segments.end(), b.segments.begin(), b.segments.end());
  a.spans.insert(a.spans.end(), b.spans.begin(), b.spans.end());
  const std::vector<TableGrid> tables =
      DetectTables(a.segments, a.spans, kA4);
  ASSERT_EQ(tables.size(), 2u);
  EXPECT_FALSE(Intersection(tables[0].bbox, tables[1].bbox).has_value());
  EXPECT_EQ(tables[0].cells, a.cells);
  EXPECT_EQ(tables[1].cells, b.cells);
}

TEST(DetectTablesTest, SnapsJitteredLines) {
  Grid g = MakeGrid(72, 100, 2, 2);
  // Sub-degree tilt and endpoints falling short of the crossing lines.
  g.segments[0].b.y += 0.5;
  g.segments[1].a.x += 1.5;
  g.segments[4].a.y -= 1.0;
  const std::vector<TableGrid> tables =
      DetectTables(g.segments, g.spans, kA4);
  ASSERT_EQ(tables.size(), 1u);
  EXPECT_EQ(tables[0].rows(), 2);
  EXPECT_EQ(tables[0].cols(), 2);
  EXPECT_EQ(tables[0].cells, g.cells);
}

TEST(DetectTablesTest, TranslationInvariant) {
  const Grid g = MakeGrid(72, 100, 3, 3);
  const TableGrid base = DetectTables(g.segments, g.spans, kA4).at(0);
  for (auto [dx, dy] : {std::pair{10.0, 20.0}, {100.0, 300.0}, {-50.0, 7.0}}) {
    Grid moved = g;
    for (pdf::Segment& s : moved.segments) {
      s.a.x += dx, s.a.y += dy, s.b.x += dx, s.b.y += dy;
    }
    for (TextSpan& s : moved.spans) s.bbox = s.bbox.Translated(dx, dy);
    const std::vector<TableGrid> t =
        DetectTables(moved.segments, moved.spans, kA4);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].bbox, base.bbox.Translated(dx, dy));
    EXPECT_EQ(t[0].cells, base.cells);
  }
}

TEST(DetectTablesTest, CellTextConservesTokens) {
  Grid g = MakeGrid(72, 100, 3, 3);
  // A second span in one cell; both land in the cell in reading order.
  TextSpan extra = g.spans[4];
  extra.text = "extra";
  extra.bbox = extra.bbox.Translated(0, 0.1);
  extra.bbox.x0 += 31, extra.bbox.x1 += 20;
  g.spans.push_back(extra);
  const TableGrid t = DetectTables(g.segments, g.spans, kA4).at(0);
  EXPECT_EQ(t.cells[1][1], "r1c1 extra");
}

TEST(RotationTest, PointTransformRoundTrip) {
  for (int rotation : {0, 90, 270}) {
    for (Point p : {Point{0, 0}, Point{100, 250}, Point{595, 842}}) {
      const Point q = UnrotatePoint(RotatePoint(p, rotation, kA4), rotation,
                                    kA4);
      EXPECT_NEAR(q.x, p.x, 1e-9);
      EXPECT_NEAR(q.y, p.y, 1e-9);
    }
  }
  const Point r = RotatePoint({100, 250}, 90, kA4);
  EXPECT_EQ(r, (Point{250, 595 - 100}));
  EXPECT_EQ(RotatePoint({100, 250}, 0, kA4), (Point{100, 250}));
}

TEST(RotationTest, UnrotatedTableIsUnchanged) {
  const Grid g = MakeGrid(72, 100, 2, 5);
  const TableGrid t = DetectTables(g.segments, g.spans, kA4).at(0);
  EXPECT_EQ(NormalizeRotatedTable(t, kA4), t);
}

TEST(CsvTest, MinimalAndEscaped) {
  TableGrid t;
  t.row_boundaries = {0, 1};
  t.col_boundaries = {0, 1};
  t.cells = {{"x"}};
  EXPECT_EQ(CellsToCsv(t), "x\n");
  t.col_boundaries = {0, 1, 2, 3};
  t.cells = {{"a,b", "say \"hi\"", "two\nlines"}};
  EXPECT_EQ(CellsToCsv(t), "\"a,b\",\"say \"\"hi\"\"\",\"two\nlines\"\n");
}

TEST(CsvTest, ExportWritesRowsAndFields) {
  testing::ScopedTempDir dir;
  const Grid g = MakeGrid(72, 100, 3, 4);
  const TableGrid t = DetectTables(g.segments, g.spans, kA4).at(0);
  const std::string path = (dir.path() / "tables" / "d" / "p0_t0.csv").string();
  ASSERT_OK_AND_ASSIGN(const std::string written, ExportCells(t, path));
  EXPECT_EQ(written, path);
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3) << line;
    EXPECT_EQ(line.substr(0, line.find(',')), absl::StrCat("r", lines, "c0"));
    ++lines;
  }
  EXPECT_EQ(lines, 3);
}

TEST(CsvTest, ExportFailureIsAnError) {
  testing::ScopedTempDir dir;
  const std::filesystem::path blocker = dir.path() / "file";
  std::ofstream(blocker) << "x";
  TableGrid t;
  t.row_boundaries = {0, 1};
  t.col_boundaries = {0, 1};
  t.cells = {{"x"}};
  EXPECT_FALSE(ExportCells(t, (blocker / "t.csv").string()).ok());
}

TEST(SuppressTest, RemovesCoveredTextOnly) {
  TableGrid t;
  t.bbox = {100, 100, 200, 200};
  const std::vector<TableGrid> tables = {t};
  std::vector<LayoutBlock> blocks = {
      TextAt({120, 120, 180, 140}),   // Inside: removed.
      TextAt({300, 300, 400, 320}),   // Disjoint: kept.
      TextAt({130, 100, 230, 200}),   // Exactly 0.70 covered: kept.
      TextAt({129, 100, 229, 200}),   // 0.71 covered: removed.
  };
  const std::vector<LayoutBlock> kept =
      SuppressOverlappingText(blocks, tables, 0.7);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].bbox, blocks[1].bbox);
  EXPECT_EQ(kept[1].bbox, blocks[2].bbox);
}

TEST(SuppressTest, NoTablesKeepsEverything) {
  std::vector<LayoutBlock> blocks = {TextAt({0, 0, 10, 10})};
  EXPECT_EQ(SuppressOverlappingText(blocks, {}, 0.7).size(), 1u);
}

}  // namespace
}  // namespace dla::table
