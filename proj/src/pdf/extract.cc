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

#include "dla/pdf/extract.h"

#include <regex>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "dla/core/hash.h"
#include "dla/core/strings.h"
#include "dla/pdf/errors.h"
#include "dla/pdf/text_blocks.h"
#include "src/pdf/content.h"
#include "src/pdf/document.h"
#include "src/pdf/font.h"

namespace dla::pdf {
namespace {

std::optional<absl::CivilDay> MakeDay(int y, int m, int d) {
  if (y < 1900 || y > 2999 || m < 1 || m > 12 || d < 1 || d > 31) {
    return std::nullopt;
  }
  const absl::CivilDay day(y, m, d);
  // CivilDay normalizes out-of-range days; reject those.
  if (day.month() != m || day.day() != d) return std::nullopt;
  return day;
}

int Digits(std::string_view s, size_t pos, size_t n) {
  int v = 0;
  if (pos + n > s.size()) return -1;
  for (size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') return -1;
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

// Converts a rectangle in user space to a page-frame box.
BoundingBox RectToPage(const Array& rect, const Document& doc,
                       const PageRecord& page) {
  double v[4] = {0, 0, 0, 0};
  for (size_t i = 0; i < 4 && i < rect.size(); ++i) {
    v[i] = doc.Resolve(rect[i]).AsNumber().value_or(0.0);
  }
  return BoundingBox::FromCorners({v[0] - page.box[0], page.box[3] - v[1]},
                                  {v[2] - page.box[0], page.box[3] - v[3]});
}

void ExtractLinks(const Document& doc, const PageRecord& page,
                  ParsedPage* out) {
  const Object annots = doc.Get(page.dict, "Annots");
  const Array* list = annots.AsArray();
  if (list == nullptr) return;
  for (const Object& item : *list) {
    const Object annot = doc.Resolve(item);
    const Dict* dict = annot.AsDict();
    if (dict == nullptr || !doc.Get(*dict, "Subtype").is_name("Link")) continue;
    const Object action = doc.Get(*dict, "A");
    const Dict* action_dict = action.AsDict();
    if (action_dict == nullptr) continue;
    const Object uri = doc.Get(*action_dict, "URI");
    if (!doc.Get(*action_dict, "S").is_name("URI") || !uri.is_string()) {
      continue;
    }
    const Object rect = doc.Get(*dict, "Rect");
    if (!rect.is_array()) continue;
    LayoutBlock block;
    block.kind = BlockKind::kLink;
    block.label = LayoutLabel::kLink;
    block.bbox = RectToPage(*rect.AsArray(), doc, page);
    block.page_index = out->geometry.page_index;
    std::string text = *uri.AsString();
    if (text.size() >= 2 && static_cast<unsigned char>(text[0]) == 0xFE &&
        static_cast<unsigned char>(text[1]) == 0xFF) {
      text = Utf16BeToUtf8(std::string_view(text).substr(2));
    }
    block.payload = std::move(text);
    out->link_blocks.push_back(std::move(block));
  }
}

// Drops degenerate or off-page boxes and numbers the rest.
void FinishNonTextBlocks(std::vector<LayoutBlock>* blocks,
                         std::string_view tag, ParsedPage* page) {
  std::vector<LayoutBlock> kept;
  for (LayoutBlock& b : *blocks) {
    if (!(Area(b.bbox) > 0.0)) {
      page->warnings.push_back(absl::StrCat("page ", page->geometry.page_index,
                                            ": dropped zero-area ",
                                            ToAbsl(BlockKindName(b.kind)), " block"));
      continue;
    }
    if (!Intersection(b.bbox, page->geometry.Bounds())) {
      page->warnings.push_back(absl::StrCat("page ", page->geometry.page_index,
                                            ": dropped off-page ",
                                            ToAbsl(BlockKindName(b.kind)), " block"));
      continue;
    }
    ComputePageMargins(b.bbox, page->geometry, &b.clipped);
    b.block_id =
        absl::StrCat("p", page->geometry.page_index, "_", ToAbsl(tag), kept.size());
    kept.push_back(std::move(b));
  }
  *blocks = std::move(kept);
}

}  // namespace

std::optional<absl::CivilDay> ParsePdfDate(std::string_view s) {
  std::string text(s);
  if (text.size() >= 2 && static_cast<unsigned char>(text[0]) == 0xFE &&
      static_cast<unsigned char>(text[1]) == 0xFF) {
    text = Utf16BeToUtf8(std::string_view(text).substr(2));
  }
  std::string_view v = text;
  while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
  if (v.substr(0, 2) == "D:") v.remove_prefix(2);
  const int y = Digits(v, 0, 4);
  if (y < 0) return std::nullopt;
  int m = Digits(v, 4, 2);
  int d = Digits(v, 6, 2);
  // Month and day are optional in the date syntax.
  if (m < 0) m = 1;
  if (d < 0) d = 1;
  return MakeDay(y, m, d);
}

std::optional<absl::CivilDay> DateFromFileName(std::string_view name) {
  static const std::regex kPattern(
      R"((^|[^0-9])((19|20)[0-9]{2})([-_]?)([0-9]{2})\4([0-9]{2})($|[^0-9]))");
  const std::string s(name);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), kPattern);
       it != std::sregex_iterator(); ++it) {
    int y = 0, m = 0, d = 0;
    if (!absl::SimpleAtoi((*it)[2].str(), &y) ||
        !absl::SimpleAtoi((*it)[5].str(), &m) ||
        !absl::SimpleAtoi((*it)[6].str(), &d)) {
      continue;
    }
    if (auto day = MakeDay(y, m, d)) return day;
  }
  return std::nullopt;
}

std::string MakeDocId(std::string_view source_id, std::string_view hash) {
  return absl::StrCat(ToAbsl(source_id), "-", ToAbsl(hash.substr(0, 12)));
}

absl::StatusOr<ParsedDocument> ParseDocument(std::string_view bytes,
                                             std::string_view source_id,
                                             const ExtractOptions& options) {
  ParsedDocument result;
  result.source_id = std::string(source_id);
  result.content_hash = Sha256Hex(bytes);
  result.doc_id = MakeDocId(source_id, result.content_hash);

  auto doc_or = Document::Open(bytes);
  if (!doc_or.ok()) return doc_or.status();
  const Document& doc = **doc_or;
  if (doc.rebuilt()) {
    result.warnings.push_back("cross-reference data damaged; objects rebuilt");
  }
  auto pages = doc.Pages();
  if (!pages.ok()) return pages.status();
  if (pages->empty()) return MalformedPdfError(0, "document has no pages");

  const Dict info = doc.Info();
  if (const Object* date = Find(info, "CreationDate"); date && date->is_string()) {
    result.publication_date = ParsePdfDate(*date->AsString());
  }
  if (!result.publication_date && !options.file_name.empty()) {
    result.publication_date = DateFromFileName(options.file_name);
  }

  for (size_t i = 0; i < pages->size(); ++i) {
    const PageRecord& record = (*pages)[i];
    ParsedPage page;
    page.geometry.page_index = static_cast<int>(i);
    page.geometry.width = record.box[2] - record.box[0];
    page.geometry.height = record.box[3] - record.box[1];
    page.geometry.rotation = ((record.rotate % 360) + 360) % 360;
    if (!page.geometry.IsValid()) {
      page.warnings.push_back(absl::StrCat("page ", i, ": invalid page box"));
      page.geometry.width = std::max(page.geometry.width, 1.0);
      page.geometry.height = std::max(page.geometry.height, 1.0);
    }

    ContentInterpreter interp(doc, record);
    const absl::Status run = interp.Run();
    if (!run.ok()) {
      page.warnings.push_back(absl::StrCat("page ", i,
                                           ": content skipped: ", run.message()));
    } else {
      for (TextSpan& s : interp.spans()) {
        if (PreprocessText(s.text).empty()) continue;
        if (!Intersection(s.bbox, page.geometry.Bounds())) continue;
        page.spans.push_back(std::move(s));
      }
      for (const BoundingBox& box : interp.images()) {
        LayoutBlock block;
        block.kind = BlockKind::kImage;
        block.label = LayoutLabel::kImage;
        block.bbox = box;
        block.page_index = static_cast<int>(i);
        page.image_blocks.push_back(std::move(block));
      }
      page.segments = std::move(interp.segments());
      for (std::string& w : interp.warnings()) {
        page.warnings.push_back(absl::StrCat("page ", i, ": ", w));
      }
    }
    AssignLineIds(&page.spans);
    if (options.reconstruct_words) {
      page.spans = ReconstructSpacelessText(page.spans);
    }
    ExtractLinks(doc, record, &page);
    FinishNonTextBlocks(&page.image_blocks, "i", &page);
    FinishNonTextBlocks(&page.link_blocks, "l", &page);
    for (const std::string& w : page.warnings) result.warnings.push_back(w);
    result.pages.push_back(std::move(page));
  }
  return result;
}

}  // namespace dla::pdf
