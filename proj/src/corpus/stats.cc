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

#include "dla/corpus/stats.h"

#include <algorithm>
#include <filesystem>
#include <map>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dla/core/strings.h"

namespace dla::corpus {

void SourceStats::Add(const DocumentManifest& m) {
  ++docs;
  pages += m.page_count;
  tokens += m.token_count;
  images += m.kind_counts[Code(BlockKind::kImage)];
  tables += m.kind_counts[Code(BlockKind::kTable)];
  links += m.kind_counts[Code(BlockKind::kLink)];
  identifiers += m.label_counts[0];
  titles += m.label_counts[1];
  summaries += m.label_counts[2];
  bodies += m.label_counts[3];
}

void SourceStats::Add(const SourceStats& o) {
  docs += o.docs;
  pages += o.pages;
  tokens += o.tokens;
  images += o.images;
  tables += o.tables;
  links += o.links;
  identifiers += o.identifiers;
  titles += o.titles;
  summaries += o.summaries;
  bodies += o.bodies;
}

namespace {

std::vector<std::string> Cells(const SourceStats& s) {
  return {s.source_id,
          absl::StrCat(s.docs),
          absl::StrCat(s.pages),
          absl::StrCat(s.tokens),
          absl::StrCat(s.images),
          absl::StrCat(s.tables),
          absl::StrCat(s.links),
          absl::StrCat(s.identifiers),
          absl::StrCat(s.titles),
          absl::StrCat(s.summaries),
          absl::StrCat(s.bodies)};
}

nlohmann::json RowJson(const SourceStats& s) {
  return {{"source", s.source_id}, {"docs", s.docs},
          {"pages", s.pages},      {"tokens", s.tokens},
          {"images", s.images},    {"tables", s.tables},
          {"links", s.links},      {"identifier", s.identifiers},
          {"title", s.titles},     {"summary", s.summaries},
          {"body", s.bodies}};
}

}  // namespace

std::string CorpusStats::ToText() const {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"Source", "#Doc", "#Pages", "#Tokens", "#Images", "#Tables",
                  "#Links", "#ID", "#Title", "#Summary", "#Body"});
  for (const SourceStats& r : rows) grid.push_back(Cells(r));
  grid.push_back(Cells(total));
  std::vector<size_t> width(grid[0].size());
  for (const auto& row : grid) {
    for (size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      const std::string pad(width[c] - row[c].size(), ' ');
      if (c == 0) {
        line += row[c] + pad;
      } else {
        line += "  " + pad + row[c];
      }
    }
    out += line + "\n";
  };
  size_t total_width = 0;
  for (size_t w : width) total_width += w + 2;
  const std::string rule(total_width - 2, '-');
  emit(grid.front());
  out += rule + "\n";
  for (size_t i = 1; i + 1 < grid.size(); ++i) emit(grid[i]);
  out += rule + "\n";
  emit(grid.back());
  return out;
}

nlohmann::json CorpusStats::ToJson() const {
  nlohmann::json j = {{"sources", nlohmann::json::array()},
                      {"total", RowJson(total)}};
  for (const SourceStats& r : rows) j["sources"].push_back(RowJson(r));
  return j;
}

absl::StatusOr<CorpusStats> ComputeStats(const CorpusStore& store,
                                         std::optional<std::string> source_id) {
  std::map<std::string, SourceStats> by_source;
  if (source_id) {
    by_source[*source_id].source_id = *source_id;
  } else {
    for (const std::string& id : store.ListSources()) {
      by_source[id].source_id = id;
    }
  }
  auto manifests = store.ListManifests(source_id);
  if (!manifests.ok()) return manifests.status();
  for (const DocumentManifest& m : *manifests) {
    SourceStats& s = by_source[m.source_id];
    s.source_id = m.source_id;
    s.Add(m);
  }
  CorpusStats stats;
  stats.total.source_id = "Total";
  for (auto& [id, s] : by_source) {
    stats.total.Add(s);
    stats.rows.push_back(std::move(s));
  }
  return stats;
}

VerifyReport VerifyCorpus(const CorpusStore& store, double suppress_threshold) {
  VerifyReport report;
  auto manifests = store.ListManifests();
  if (!manifests.ok()) {
    report.problems.push_back(std::string(manifests.status().message()));
    return report;
  }
  for (const DocumentManifest& m : *manifests) {
    ++report.documents;
    auto problem = [&](std::string_view what) {
      report.problems.push_back(absl::StrCat(m.doc_id, ": ", ToAbsl(what)));
    };
    if (!std::filesystem::exists(store.PdfPath(m.doc_id))) {
      problem("source PDF missing");
    }
    auto layout = store.ReadLayout(m.doc_id);
    if (!layout.ok()) {
      problem(ToStd(layout.status().message()));
      continue;
    }
    report.records += static_cast<int>(layout->records.size());
    if (layout->doc_id != m.doc_id || layout->source_id != m.source_id) {
      problem("layout header does not match the manifest");
    }
    DocumentManifest recomputed = m;
    FillCounts(*layout, &recomputed);
    if (recomputed.page_count != m.page_count) {
      problem(absl::StrCat("page count ", m.page_count, " != ",
                           recomputed.page_count));
    }
    if (recomputed.token_count != m.token_count) {
      problem(absl::StrCat("token count ", m.token_count, " != ",
                           recomputed.token_count));
    }
    if (recomputed.kind_counts != m.kind_counts) {
      problem(absl::StrCat("kind counts [", absl::StrJoin(m.kind_counts, ","),
                           "] != [",
                           absl::StrJoin(recomputed.kind_counts, ","), "]"));
    }
    if (recomputed.label_counts != m.label_counts) {
      problem(absl::StrCat("label counts [", absl::StrJoin(m.label_counts, ","),
                           "] != [",
                           absl::StrJoin(recomputed.label_counts, ","), "]"));
    }
    if (recomputed.origin_counts != m.origin_counts) {
      problem(absl::StrCat(
          "origin counts [", absl::StrJoin(m.origin_counts, ","), "] != [",
          absl::StrJoin(recomputed.origin_counts, ","), "]"));
    }
    for (const LayoutRecord& r : layout->records) {
      if (r.block.kind == BlockKind::kTable) {
        if (r.block.payload && !r.block.payload->empty() &&
            !std::filesystem::exists(store.root() / *r.block.payload)) {
          problem(absl::StrCat("table CSV ", *r.block.payload, " missing"));
        }
        for (const LayoutRecord& t : layout->records) {
          if (t.block.kind != BlockKind::kText ||
              t.page.page_index != r.page.page_index) {
            continue;
          }
          if (OverlapFraction(t.block.bbox, r.block.bbox) >
              suppress_threshold) {
            problem(absl::StrCat("text block ", t.block.block_id,
                                 " overlaps table ", r.block.block_id));
          }
        }
      }
    }
  }
  return report;
}

}  // namespace dla::corpus
