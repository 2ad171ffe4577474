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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "dla/pdf/text_blocks.h"

namespace dla::table {
namespace {

// An axis-parallel rule: `pos` is y for horizontals and x for verticals;
// [lo, hi] is the extent along the other axis.
struct Rule {
  double pos = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
  std::vector<Point> raw;  // Original endpoints.
};

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  size_t Find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Union(size_t a, size_t b) { parent_[Find(a)] = Find(b); }

 private:
  std::vector<size_t> parent_;
};

std::vector<Rule> MergeCollinear(std::vector<Rule> rules, double tol) {
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    if (a.pos != b.pos) return a.pos < b.pos;
    return a.lo < b.lo;
  });
  std::vector<Rule> merged;
  std::vector<bool> used(rules.size(), false);
  for (size_t i = 0; i < rules.size(); ++i) {
    if (used[i]) continue;
    Rule cur = rules[i];
    used[i] = true;
    // Absorb rules until nothing else touches the current one.
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t j = i + 1; j < rules.size(); ++j) {
        if (used[j]) continue;
        const Rule& r = rules[j];
        if (r.pos - cur.pos > tol) break;
        if (std::abs(r.pos - cur.pos) > tol) continue;
        if (r.lo > cur.hi + tol || r.hi < cur.lo - tol) continue;
        cur.pos = (cur.pos * cur.count + r.pos * r.count) / (cur.count + r.count);
        cur.count += r.count;
        cur.lo = std::min(cur.lo, r.lo);
        cur.hi = std::max(cur.hi, r.hi);
        cur.raw.insert(cur.raw.end(), r.raw.begin(), r.raw.end());
        used[j] = true;
        grew = true;
      }
    }
    merged.push_back(std::move(cur));
  }
  return merged;
}

// Groups sorted positions closer than `tol` and returns the group means.
std::vector<double> Cluster(std::vector<double> values, double tol) {
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  size_t i = 0;
  while (i < values.size()) {
    size_t j = i + 1;
    double sum = values[i];
    while (j < values.size() && values[j] - values[j - 1] <= tol) {
      sum += values[j];
      ++j;
    }
    out.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  return out;
}

int IntervalIndex(const std::vector<double>& bounds, double v) {
  const auto it = std::upper_bound(bounds.begin(), bounds.end(), v);
  const int idx = static_cast<int>(it - bounds.begin()) - 1;
  return std::clamp(idx, 0, static_cast<int>(bounds.size()) - 2);
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::vector<TableGrid> DetectTables(std::span<const pdf::Segment> segments,
                                    std::span<const TextSpan> spans,
                                    const PageGeometry& /*g*/,
                                    const DetectOptions& options) {
  const double tol = options.endpoint_tolerance;
  const double slope = std::tan(options.angle_tolerance_deg *
                                std::numbers::pi / 180.0);
  std::vector<Rule> horizontals, verticals;
  for (const pdf::Segment& s : segments) {
    const double dx = s.b.x - s.a.x;
    const double dy = s.b.y - s.a.y;
    if (std::hypot(dx, dy) <= tol) continue;
    if (std::abs(dy) <= slope * std::abs(dx)) {
      horizontals.push_back({(s.a.y + s.b.y) / 2.0, std::min(s.a.x, s.b.x),
                             std::max(s.a.x, s.b.x), 1, {s.a, s.b}});
    } else if (std::abs(dx) <= slope * std::abs(dy)) {
      verticals.push_back({(s.a.x + s.b.x) / 2.0, std::min(s.a.y, s.b.y),
                           std::max(s.a.y, s.b.y), 1, {s.a, s.b}});
    }
  }
  horizontals = MergeCollinear(std::move(horizontals), tol);
  verticals = MergeCollinear(std::move(verticals), tol);

  const size_t nh = horizontals.size();
  UnionFind uf(nh + verticals.size());
  for (size_t i = 0; i < nh; ++i) {
    const Rule& h = horizontals[i];
    for (size_t j = 0; j < verticals.size(); ++j) {
      const Rule& v = verticals[j];
      if (v.pos >= h.lo - tol && v.pos <= h.hi + tol && h.pos >= v.lo - tol &&
          h.pos <= v.hi + tol) {
        uf.Union(i, nh + j);
      }
    }
  }
  std::map<size_t, std::vector<size_t>> components;
  for (size_t i = 0; i < nh + verticals.size(); ++i) {
    components[uf.Find(i)].push_back(i);
  }

  std::vector<TableGrid> tables;
  for (const auto& [root, members] : components) {
    std::vector<double> ys, xs;
    std::vector<Point> raw;
    for (size_t m : members) {
      const Rule& r = m < nh ? horizontals[m] : verticals[m - nh];
      (m < nh ? ys : xs).push_back(r.pos);
      raw.insert(raw.end(), r.raw.begin(), r.raw.end());
    }
    if (ys.size() < 2 || xs.size() < 2) continue;
    TableGrid t;
    t.row_boundaries = Cluster(ys, tol);
    t.col_boundaries = Cluster(xs, tol);
    if (t.rows() < 1 || t.cols() < 1) continue;
    t.bbox = BoundingBox::FromCorners(raw.front(), raw.front());
    for (const Point& p : raw) {
      t.bbox = Union(t.bbox, BoundingBox::FromCorners(p, p));
    }
    t.cells.assign(t.rows(), std::vector<std::string>(t.cols()));

    std::map<int, int> votes;
    for (const TextSpan& s : spans) {
      const Point c = Center(s.bbox);
      if (!Contains(t.bbox, c)) continue;
      ++votes[s.direction];
      std::string& cell = t.cells[IntervalIndex(t.row_boundaries, c.y)]
                                 [IntervalIndex(t.col_boundaries, c.x)];
      if (!cell.empty()) cell.push_back(' ');
      cell += s.text;
    }
    for (auto& row : t.cells) {
      for (std::string& cell : row) cell = pdf::PreprocessText(cell);
    }
    int best = 0;
    for (int dir : {90, 270}) {
      if (votes[dir] > votes[best]) best = dir;
    }
    t.rotation = best;
    tables.push_back(std::move(t));
  }
  std::sort(tables.begin(), tables.end(),
            [](const TableGrid& a, const TableGrid& b) {
              return pdf::ReadingOrderKey(a.bbox, 3.0) <
                     pdf::ReadingOrderKey(b.bbox, 3.0);
            });
  return tables;
}

Point RotatePoint(Point p, int rotation, const PageGeometry& g) {
  switch (rotation) {
    case 90:
      return {p.y, g.width - p.x};
    case 270:
      return {g.height - p.y, p.x};
    default:
      return p;
  }
}

Point UnrotatePoint(Point p, int rotation, const PageGeometry& g) {
  switch (rotation) {
    case 90:
      return {g.width - p.y, p.x};
    case 270:
      return {p.y, g.height - p.x};
    default:
      return p;
  }
}

TableGrid NormalizeRotatedTable(const TableGrid& t, const PageGeometry& g) {
  if (t.rotation != 90 && t.rotation != 270) return t;
  TableGrid out;
  out.bbox = t.bbox;
  out.rotation = t.rotation;
  const int nrows = t.rows();
  const int ncols = t.cols();
  if (t.rotation == 90) {
    for (auto it = t.col_boundaries.rbegin(); it != t.col_boundaries.rend();
         ++it) {
      out.row_boundaries.push_back(g.width - *it);
    }
    out.col_boundaries = t.row_boundaries;
  } else {
    out.row_boundaries = t.col_boundaries;
    for (auto it = t.row_boundaries.rbegin(); it != t.row_boundaries.rend();
         ++it) {
      out.col_boundaries.push_back(g.height - *it);
    }
  }
  out.cells.assign(ncols, std::vector<std::string>(nrows));
  for (int r = 0; r < ncols; ++r) {
    for (int j = 0; j < nrows; ++j) {
      out.cells[r][j] = t.rotation == 90 ? t.cells[j][ncols - 1 - r]
                                         : t.cells[nrows - 1 - j][r];
    }
  }
  return out;
}

std::string CellsToCsv(const TableGrid& t) {
  std::string out;
  for (const auto& row : t.cells) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out.push_back(',');
      out += CsvField(row[c]);
    }
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<std::string> ExportCells(const TableGrid& t,
                                        const std::string& path) {
  std::error_code ec;
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) {
      return absl::InternalError(
          absl::StrCat("cannot create ", p.parent_path().string(), ": ",
                       ec.message()));
    }
  }
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) return absl::InternalError(absl::StrCat("cannot open ", path));
  f << CellsToCsv(t);
  f.close();
  if (!f) return absl::InternalError(absl::StrCat("cannot write ", path));
  return path;
}

std::vector<LayoutBlock> SuppressOverlappingText(
    std::vector<LayoutBlock> text_blocks, std::span<const TableGrid> tables,
    double threshold) {
  std::erase_if(text_blocks, [&](const LayoutBlock& b) {
    for (const TableGrid& t : tables) {
      if (OverlapFraction(b.bbox, t.bbox) > threshold) return true;
    }
    return false;
  });
  return text_blocks;
}

}  // namespace dla::table
