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

#include "dla/corpus/overlay.h"

#include <charconv>

#include "absl/strings/str_cat.h"
#include "dla/core/strings.h"

namespace dla::corpus {
namespace {

std::string XmlEscape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

const PageGeometry* FindPage(const DocumentLayout& layout, int page_index) {
  for (const PageGeometry& g : layout.pages) {
    if (g.page_index == page_index) return &g;
  }
  if (page_index >= 0 && page_index < static_cast<int>(layout.pages.size())) {
    return &layout.pages[page_index];
  }
  return nullptr;
}

}  // namespace

std::string_view OverlayColor(const LayoutBlock& b) {
  switch (b.kind) {
    case BlockKind::kImage:
      return "#ff8c00";
    case BlockKind::kTable:
      return "#0000ff";
    case BlockKind::kLink:
      return "#8a2be2";
    case BlockKind::kText:
      break;
  }
  switch (b.label) {
    case LayoutLabel::kIdentifier:
      return "#00a000";
    case LayoutLabel::kTitle:
      return "#ff69b4";
    case LayoutLabel::kSummary:
      return "#00ffff";
    default:
      return "#000000";
  }
}

std::string ExactNumber(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string RenderPageSvg(const DocumentLayout& layout, int page_index) {
  const PageGeometry* g = FindPage(layout, page_index);
  const double w = g != nullptr ? g->width : 0.0;
  const double h = g != nullptr ? g->height : 0.0;
  std::string out = absl::StrCat(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"", ExactNumber(w),
      "\" height=\"", ExactNumber(h), "\" viewBox=\"0 0 ", ExactNumber(w), " ",
      ExactNumber(h), "\" data-doc-id=\"", XmlEscape(layout.doc_id),
      "\" data-page=\"", page_index, "\">\n");
  for (const LayoutRecord& r : layout.records) {
    if (r.page.page_index != page_index) continue;
    const LayoutBlock& b = r.block;
    absl::StrAppend(
        &out, "  <rect x=\"", ExactNumber(b.bbox.x0), "\" y=\"",
        ExactNumber(b.bbox.y0), "\" width=\"", ExactNumber(b.bbox.width()),
        "\" height=\"", ExactNumber(b.bbox.height()),
        "\" fill=\"none\" stroke=\"", ToAbsl(OverlayColor(b)),
        "\" stroke-width=\"1\" data-block-id=\"", XmlEscape(b.block_id),
        "\" data-kind=\"", ToAbsl(BlockKindName(b.kind)), "\" data-label=\"",
        ToAbsl(LayoutLabelName(b.label)), "\" data-origin=\"",
        ToAbsl(LabelOriginName(b.label_origin)), "\" data-bbox=\"",
        ExactNumber(b.bbox.x0), " ", ExactNumber(b.bbox.y0), " ",
        ExactNumber(b.bbox.x1), " ", ExactNumber(b.bbox.y1), "\"/>\n");
  }
  out += "</svg>\n";
  return out;
}

nlohmann::json BlockView(const LayoutRecord& r) {
  const LayoutBlock& b = r.block;
  nlohmann::json jb = {
      {"block_id", b.block_id},
      {"B", Code(b.kind)},
      {"L", Code(b.label)},
      {"label", std::string(LayoutLabelName(b.label))},
      {"origin", std::string(LabelOriginName(b.label_origin))},
      {"confidence", r.confidence},
      {"model_version", r.model_version},
      {"bbox", {b.bbox.x0, b.bbox.y0, b.bbox.x1, b.bbox.y1}},
      {"color", std::string(OverlayColor(b))}};
  jb["text"] = b.payload ? nlohmann::json(*b.payload) : nlohmann::json();
  return jb;
}

nlohmann::json PageView(const DocumentLayout& layout, int page_index) {
  const PageGeometry* g = FindPage(layout, page_index);
  nlohmann::json blocks = nlohmann::json::array();
  for (const LayoutRecord& r : layout.records) {
    if (r.page.page_index == page_index) blocks.push_back(BlockView(r));
  }
  return {{"doc_id", layout.doc_id},
          {"source_id", layout.source_id},
          {"page", page_index},
          {"page_count", layout.pages.size()},
          {"width", g != nullptr ? g->width : 0.0},
          {"height", g != nullptr ? g->height : 0.0},
          {"rotation", g != nullptr ? g->rotation : 0},
          {"blocks", std::move(blocks)}};
}

absl::StatusOr<int> WriteOverlays(const CorpusStore& store,
                                  std::string_view doc_id) {
  auto layout = store.ReadLayout(doc_id);
  if (!layout.ok()) return layout.status();
  const auto dir = store.OverlayDir(doc_id);
  for (const PageGeometry& g : layout->pages) {
    if (auto s = WriteFileAtomic(dir / absl::StrCat("p", g.page_index, ".svg"),
                                 RenderPageSvg(*layout, g.page_index));
        !s.ok()) {
      return s;
    }
  }
  return static_cast<int>(layout->pages.size());
}

}  // namespace dla::corpus
