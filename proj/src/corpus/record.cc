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

#include "dla/corpus/record.h"

#include "absl/strings/str_cat.h"
#include "dla/core/strings.h"
#include "dla/core/utf8.h"

namespace dla::corpus {
namespace {

using nlohmann::json;

json Box(const BoundingBox& b) { return json::array({b.x0, b.y0, b.x1, b.y1}); }

BoundingBox BoxFrom(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(),
          j.at(3).get<double>()};
}

// Byte offset just past the first `n` code points of `s`.
size_t CodePointPrefix(std::string_view s, size_t n) {
  size_t pos = 0;
  for (size_t i = 0; i < n && pos < s.size(); ++i) utf8::DecodeNext(s, &pos);
  return pos;
}

json RecordToJson(const LayoutRecord& r, Sidecars* sidecars) {
  const LayoutBlock& b = r.block;
  const features::FeatureVector& fv = r.fv;
  json j = {{"record", "block"},
            {"doc_id", r.doc_id},
            {"source_id", r.source_id},
            {"page", r.page.page_index},
            {"page_size", json::array({r.page.width, r.page.height})},
            {"page_rotation", r.page.rotation},
            {"block_id", b.block_id},
            {"B", Code(b.kind)},
            {"L", Code(b.label)},
            {"bbox", Box(b.bbox)},
            {"center", json::array({fv.f6, fv.f7})},
            {"margins", json::array({fv.f8, fv.f9, fv.f10, fv.f11})}};
  if (b.clipped) j["clipped"] = true;
  if (fv.text) {
    const features::TextFeatures& t = *fv.text;
    j["f13"] = t.f13;
    j["f14"] = t.f14;
    j["f15"] = t.f15;
    j["f16"] = t.f16;
    j["f17"] = t.f17;
    j["f18"] = t.f18;
  }
  if (b.payload) {
    const std::string& p = *b.payload;
    const size_t cut = CodePointPrefix(p, kMaxInlinePayloadChars);
    if (b.kind == BlockKind::kText && cut < p.size()) {
      j["f12"] = p.substr(0, cut);
      j["f12_truncated"] = true;
      if (sidecars != nullptr) (*sidecars)[b.block_id] = p;
    } else {
      j["f12"] = p;
    }
  }
  j["label_origin"] = std::string(LabelOriginName(b.label_origin));
  j["model_version"] = r.model_version;
  j["confidence"] = r.confidence;
  if (r.table) {
    const table::TableGrid& t = *r.table;
    j["table"] = {{"row_boundaries", t.row_boundaries},
                  {"col_boundaries", t.col_boundaries},
                  {"cells", t.cells},
                  {"rotation", t.rotation}};
  }
  return j;
}

absl::StatusOr<LayoutRecord> RecordFromJson(
    const json& j,
    const std::function<absl::StatusOr<std::string>(const std::string&)>&
        load_sidecar) {
  LayoutRecord r;
  r.doc_id = j.at("doc_id").get<std::string>();
  r.source_id = j.at("source_id").get<std::string>();
  r.page.page_index = j.at("page").get<int>();
  r.page.width = j.at("page_size").at(0).get<double>();
  r.page.height = j.at("page_size").at(1).get<double>();
  r.page.rotation = j.value("page_rotation", 0);
  LayoutBlock& b = r.block;
  b.block_id = j.at("block_id").get<std::string>();
  const int kind_code = j.at("B").get<int>();
  const int label_code = j.at("L").get<int>();
  auto kind = BlockKindFromCode(kind_code);
  auto label = LayoutLabelFromCode(label_code);
  if (!kind.ok()) return kind.status();
  if (!label.ok()) return label.status();
  if (!IsConsistent(*kind, *label)) {
    return absl::DataLossError(absl::StrCat("L=", label_code,
                                            " is inconsistent with B=",
                                            kind_code));
  }
  b.kind = *kind;
  b.label = *label;
  b.bbox = BoxFrom(j.at("bbox"));
  if (!b.bbox.IsValid()) return absl::DataLossError("invalid bbox");
  b.page_index = r.page.page_index;
  b.clipped = j.value("clipped", false);
  if (j.contains("f12")) {
    b.payload = j.at("f12").get<std::string>();
    if (j.value("f12_truncated", false)) {
      auto full = load_sidecar(b.block_id);
      if (!full.ok()) return full.status();
      b.payload = *std::move(full);
    }
  }
  auto origin = ParseLabelOrigin(j.at("label_origin").get<std::string>());
  if (!origin.ok()) return origin.status();
  b.label_origin = *origin;
  r.model_version = j.value("model_version", 0);
  r.confidence = j.value("confidence", 1.0);

  features::FeatureVector& fv = r.fv;
  fv.f1 = r.page.page_index;
  fv.f2 = b.bbox.x0;
  fv.f3 = b.bbox.y0;
  fv.f4 = b.bbox.x1;
  fv.f5 = b.bbox.y1;
  fv.f6 = j.at("center").at(0).get<double>();
  fv.f7 = j.at("center").at(1).get<double>();
  const json& m = j.at("margins");
  fv.f8 = m.at(0).get<double>();
  fv.f9 = m.at(1).get<double>();
  fv.f10 = m.at(2).get<double>();
  fv.f11 = m.at(3).get<double>();
  fv.f12 = b.payload;
  if (j.contains("f13")) {
    features::TextFeatures t;
    t.f13 = j.at("f13").get<double>();
    t.f14 = j.at("f14").get<double>();
    t.f15 = j.at("f15").get<double>();
    t.f16 = j.at("f16").get<std::vector<std::string>>();
    t.f17 = j.at("f17").get<double>();
    t.f18 = j.at("f18").get<int>();
    fv.text = std::move(t);
  }
  fv.b = b.kind;
  fv.l = b.label;
  if (j.contains("table")) {
    const json& jt = j.at("table");
    table::TableGrid t;
    t.bbox = b.bbox;
    t.row_boundaries = jt.at("row_boundaries").get<std::vector<double>>();
    t.col_boundaries = jt.at("col_boundaries").get<std::vector<double>>();
    t.cells = jt.at("cells").get<std::vector<std::vector<std::string>>>();
    t.rotation = jt.value("rotation", 0);
    r.table = std::move(t);
  }
  return r;
}

}  // namespace

std::string_view ValidationStatusName(ValidationStatus s) {
  switch (s) {
    case ValidationStatus::kUnvalidated:
      return "unvalidated";
    case ValidationStatus::kInReview:
      return "in_review";
    case ValidationStatus::kValidated:
      return "validated";
  }
  return "?";
}

absl::StatusOr<ValidationStatus> ParseValidationStatus(std::string_view s) {
  for (auto v : {ValidationStatus::kUnvalidated, ValidationStatus::kInReview,
                 ValidationStatus::kValidated}) {
    if (s == ValidationStatusName(v)) return v;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown validation status '", ToAbsl(s), "'"));
}

void FillCounts(const DocumentLayout& layout, DocumentManifest* m) {
  m->page_count = static_cast<int>(layout.pages.size());
  m->token_count = 0;
  m->kind_counts.fill(0);
  m->label_counts.fill(0);
  m->origin_counts.fill(0);
  for (const LayoutRecord& r : layout.records) {
    ++m->kind_counts[Code(r.block.kind)];
    if (r.block.kind == BlockKind::kText) {
      ++m->label_counts[Code(r.block.label) - Code(LayoutLabel::kIdentifier)];
      if (r.fv.text) m->token_count += r.fv.text->f18;
    }
    ++m->origin_counts[static_cast<int>(r.block.label_origin)];
  }
}

std::string SerializeLayout(const DocumentLayout& layout, Sidecars* sidecars) {
  json pages = json::array();
  for (const PageGeometry& g : layout.pages) {
    pages.push_back(json::array({g.width, g.height, g.rotation}));
  }
  json header = {{"record", "document"},
                 {"doc_id", layout.doc_id},
                 {"source_id", layout.source_id},
                 {"pages", std::move(pages)}};
  std::string out = header.dump();
  out.push_back('\n');
  for (const LayoutRecord& r : layout.records) {
    out += RecordToJson(r, sidecars).dump();
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<DocumentLayout> ParseLayout(
    std::string_view jsonl,
    const std::function<absl::StatusOr<std::string>(const std::string&)>&
        load_sidecar) {
  DocumentLayout layout;
  int line_no = 0;
  bool have_header = false;
  size_t start = 0;
  while (start < jsonl.size()) {
    size_t end = jsonl.find('\n', start);
    if (end == std::string_view::npos) end = jsonl.size();
    const std::string_view line = jsonl.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    auto fail = [&](std::string_view why) {
      return absl::DataLossError(
          absl::StrCat("layout line ", line_no, ": ", ToAbsl(why)));
    };
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return fail("not a JSON object");
    try {
      const std::string kind = j.value("record", "");
      if (kind == "document") {
        if (have_header) return fail("duplicate document record");
        have_header = true;
        layout.doc_id = j.at("doc_id").get<std::string>();
        layout.source_id = j.at("source_id").get<std::string>();
        int index = 0;
        for (const json& p : j.at("pages")) {
          layout.pages.push_back({index++, p.at(0).get<double>(),
                                  p.at(1).get<double>(), p.at(2).get<int>()});
        }
        continue;
      }
      if (kind != "block") return fail("unknown record type");
      if (!have_header) return fail("block before document record");
      auto r = RecordFromJson(j, load_sidecar);
      if (!r.ok()) return fail(ToStd(r.status().message()));
      if (r->doc_id != layout.doc_id) return fail("doc_id mismatch");
      if (r->page.page_index < 0 ||
          r->page.page_index >= static_cast<int>(layout.pages.size())) {
        return fail("page out of range");
      }
      layout.records.push_back(*std::move(r));
    } catch (const json::exception& e) {
      return fail(e.what());
    }
  }
  if (!have_header) return absl::DataLossError("layout file has no header");
  return layout;
}

nlohmann::json ManifestToJson(const DocumentManifest& m) {
  json j = {{"doc_id", m.doc_id},
            {"source_id", m.source_id},
            {"origin", m.origin},
            {"content_hash", m.content_hash},
            {"page_count", m.page_count},
            {"token_count", m.token_count},
            {"blocks",
             {{"image", m.kind_counts[0]},
              {"table", m.kind_counts[1]},
              {"link", m.kind_counts[2]},
              {"text", m.kind_counts[3]}}},
            {"labels",
             {{"identifier", m.label_counts[0]},
              {"title", m.label_counts[1]},
              {"summary", m.label_counts[2]},
              {"body", m.label_counts[3]}}},
            {"provenance",
             {{"heuristic", m.origin_counts[0]},
              {"model", m.origin_counts[1]},
              {"human", m.origin_counts[2]}}},
            {"status", std::string(ValidationStatusName(m.status))},
            {"warnings", m.warnings}};
  if (m.publication_date) {
    j["publication_date"] = *m.publication_date;
  } else {
    j["publication_date"] = nullptr;
  }
  return j;
}

absl::StatusOr<DocumentManifest> ManifestFromJson(const nlohmann::json& j) {
  try {
    DocumentManifest m;
    m.doc_id = j.at("doc_id").get<std::string>();
    m.source_id = j.at("source_id").get<std::string>();
    m.origin = j.value("origin", "");
    m.content_hash = j.value("content_hash", "");
    if (j.contains("publication_date") && !j.at("publication_date").is_null()) {
      m.publication_date = j.at("publication_date").get<std::string>();
    }
    m.page_count = j.at("page_count").get<int>();
    m.token_count = j.at("token_count").get<int>();
    const json& b = j.at("blocks");
    m.kind_counts = {b.at("image").get<int>(), b.at("table").get<int>(),
                     b.at("link").get<int>(), b.at("text").get<int>()};
    const json& l = j.at("labels");
    m.label_counts = {l.at("identifier").get<int>(), l.at("title").get<int>(),
                      l.at("summary").get<int>(), l.at("body").get<int>()};
    const json& p = j.at("provenance");
    m.origin_counts = {p.at("heuristic").get<int>(), p.at("model").get<int>(),
                       p.at("human").get<int>()};
    auto status = ParseValidationStatus(j.at("status").get<std::string>());
    if (!status.ok()) return status.status();
    m.status = *status;
    m.warnings = j.value("warnings", std::vector<std::string>{});
    return m;
  } catch (const json::exception& e) {
    return absl::DataLossError(absl::StrCat("bad manifest: ", e.what()));
  }
}

}  // namespace dla::corpus
