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

#include "src/pdf/document.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dla/core/strings.h"
#include "dla/pdf/errors.h"
#include "glog/logging.h"
#include "src/pdf/filters.h"
#include "src/pdf/lexer.h"

namespace dla::pdf {
namespace {

constexpr int kMaxResolveDepth = 32;
constexpr int kMaxPageTreeDepth = 64;

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// Reads an unsigned integer starting at `pos`, skipping leading whitespace.
bool ReadUnsigned(std::string_view data, size_t* pos, size_t* value) {
  size_t i = *pos;
  while (i < data.size() && IsPdfWhitespace(data[i])) ++i;
  if (i >= data.size() || !IsDigit(data[i])) return false;
  size_t v = 0;
  while (i < data.size() && IsDigit(data[i])) {
    v = v * 10 + static_cast<size_t>(data[i] - '0');
    ++i;
  }
  *pos = i;
  *value = v;
  return true;
}

uint64_t ReadBigEndian(std::string_view bytes, size_t pos, int width) {
  uint64_t v = 0;
  for (int k = 0; k < width; ++k) {
    v = (v << 8) | static_cast<unsigned char>(bytes[pos + k]);
  }
  return v;
}

}  // namespace

absl::StatusOr<std::unique_ptr<Document>> Document::Open(
    std::string_view data) {
  const size_t header = data.substr(0, 1024).find("%PDF-");
  if (header == std::string_view::npos) {
    return MalformedPdfError(0, "missing %PDF header");
  }
  std::unique_ptr<Document> doc(new Document(data));

  const size_t startxref = data.rfind("startxref");
  absl::Status xref_status = MalformedPdfError(data.size(), "no startxref");
  if (startxref != std::string_view::npos) {
    size_t pos = startxref + 9;
    size_t offset = 0;
    if (ReadUnsigned(data, &pos, &offset) && offset < data.size()) {
      xref_status = doc->LoadXrefChain(offset);
    } else {
      xref_status = MalformedPdfError(startxref, "bad startxref value");
    }
  }
  if (!xref_status.ok() || Find(doc->trailer_, "Root") == nullptr) {
    VLOG(1) << "rebuilding xref: " << xref_status;
    absl::Status rebuilt = doc->Rebuild();
    if (!rebuilt.ok()) {
      return xref_status.ok() ? rebuilt : xref_status;
    }
  }
  if (Find(doc->trailer_, "Encrypt") != nullptr) {
    return UnsupportedDocumentError("encrypted PDF");
  }
  const Object root = doc->Get(doc->trailer_, "Root");
  if (root.AsDict() == nullptr) {
    return MalformedPdfError(startxref == std::string_view::npos ? 0 : startxref,
                             "document catalog is missing");
  }
  return doc;
}

absl::Status Document::LoadXrefChain(size_t offset) {
  std::set<size_t> seen;
  bool first = true;
  while (true) {
    if (!seen.insert(offset).second) break;  // Cyclic /Prev chain.
    Dict section_trailer;
    size_t pos = offset;
    Lexer lexer(data_, pos);
    lexer.SkipWhitespace();
    absl::Status status;
    if (data_.substr(lexer.pos(), 4) == "xref") {
      status = LoadXrefTable(lexer.pos(), &section_trailer);
    } else {
      status = LoadXrefStream(offset, &section_trailer);
    }
    if (!status.ok()) return status;
    if (first) {
      trailer_ = section_trailer;
      first = false;
    }
    // Hybrid-reference files keep extra entries in a cross-reference stream.
    if (const Object* xs = Find(section_trailer, "XRefStm")) {
      if (auto o = xs->AsInt(); o && *o > 0 &&
                                static_cast<size_t>(*o) < data_.size()) {
        Dict ignored;
        (void)LoadXrefStream(static_cast<size_t>(*o), &ignored);
      }
    }
    const Object* prev = Find(section_trailer, "Prev");
    if (prev == nullptr) break;
    const auto prev_offset = prev->AsInt();
    if (!prev_offset || *prev_offset < 0 ||
        static_cast<size_t>(*prev_offset) >= data_.size()) {
      break;
    }
    offset = static_cast<size_t>(*prev_offset);
  }
  return absl::OkStatus();
}

absl::Status Document::LoadXrefTable(size_t offset, Dict* trailer) {
  size_t pos = offset + 4;
  while (true) {
    size_t start = 0, count = 0;
    size_t probe = pos;
    if (!ReadUnsigned(data_, &probe, &start)) break;
    if (!ReadUnsigned(data_, &probe, &count)) {
      return MalformedPdfError(probe, "bad xref subsection header");
    }
    pos = probe;
    for (size_t i = 0; i < count; ++i) {
      size_t field_offset = 0, gen = 0;
      if (!ReadUnsigned(data_, &pos, &field_offset) ||
          !ReadUnsigned(data_, &pos, &gen)) {
        return MalformedPdfError(pos, "bad xref entry");
      }
      while (pos < data_.size() && IsPdfWhitespace(data_[pos])) ++pos;
      if (pos >= data_.size()) return MalformedPdfError(pos, "truncated xref");
      const char type = data_[pos++];
      const int num = static_cast<int>(start + i);
      if (type == 'n' && field_offset > 0 && !xref_.contains(num)) {
        xref_[num] = XrefEntry{XrefEntry::Kind::kOffset, field_offset, 0, 0};
      } else if (type != 'n' && type != 'f') {
        return MalformedPdfError(pos - 1, "bad xref entry type");
      }
    }
  }
  Lexer lexer(data_, pos);
  auto tok = lexer.Next();
  if (!tok.ok() || !tok->IsKeyword("trailer")) {
    return MalformedPdfError(pos, "expected trailer");
  }
  ObjectParser parser(data_, lexer.pos());
  auto dict = parser.ParseObject();
  if (!dict.ok()) return dict.status();
  if (dict->AsDict() == nullptr) {
    return MalformedPdfError(lexer.pos(), "trailer is not a dictionary");
  }
  *trailer = *dict->AsDict();
  return absl::OkStatus();
}

absl::Status Document::LoadXrefStream(size_t offset, Dict* trailer) {
  int num = 0;
  auto obj = ParseIndirectAt(offset, &num);
  if (!obj.ok()) return obj.status();
  const Stream* stream = obj->AsStream();
  if (stream == nullptr || !Get(stream->dict, "Type").is_name("XRef")) {
    return MalformedPdfError(offset, "expected cross-reference stream");
  }
  auto decoded = StreamData(*stream);
  if (!decoded.ok()) return MalformedPdfError(offset, ToStd(decoded.status().message()));
  const Array* w = Get(stream->dict, "W").AsArray();
  if (w == nullptr || w->size() != 3) {
    return MalformedPdfError(offset, "xref stream /W missing");
  }
  int widths[3];
  for (int k = 0; k < 3; ++k) {
    widths[k] = static_cast<int>((*w)[k].AsInt().value_or(0));
    if (widths[k] < 0 || widths[k] > 8) {
      return MalformedPdfError(offset, "xref stream /W out of range");
    }
  }
  const int row = widths[0] + widths[1] + widths[2];
  if (row == 0) return MalformedPdfError(offset, "empty xref stream row");
  std::vector<std::pair<int64_t, int64_t>> ranges;
  if (const Array* index = Get(stream->dict, "Index").AsArray()) {
    for (size_t i = 0; i + 1 < index->size(); i += 2) {
      ranges.emplace_back((*index)[i].AsInt().value_or(0),
                          (*index)[i + 1].AsInt().value_or(0));
    }
  } else {
    ranges.emplace_back(0, Get(stream->dict, "Size").AsInt().value_or(0));
  }
  size_t pos = 0;
  for (const auto& [start, count] : ranges) {
    for (int64_t i = 0; i < count; ++i) {
      if (pos + row > decoded->size()) break;
      const uint64_t type =
          widths[0] == 0 ? 1 : ReadBigEndian(*decoded, pos, widths[0]);
      const uint64_t f2 = ReadBigEndian(*decoded, pos + widths[0], widths[1]);
      const uint64_t f3 =
          ReadBigEndian(*decoded, pos + widths[0] + widths[1], widths[2]);
      pos += row;
      const int objnum = static_cast<int>(start + i);
      if (xref_.contains(objnum)) continue;
      if (type == 1) {
        xref_[objnum] = XrefEntry{XrefEntry::Kind::kOffset,
                                  static_cast<size_t>(f2), 0, 0};
      } else if (type == 2) {
        xref_[objnum] = XrefEntry{XrefEntry::Kind::kCompressed, 0,
                                  static_cast<int>(f2), static_cast<int>(f3)};
      }
    }
  }
  *trailer = stream->dict;
  return absl::OkStatus();
}

absl::Status Document::Rebuild() {
  rebuilt_ = true;
  xref_.clear();
  cache_.clear();
  object_streams_.clear();
  Dict trailer;
  size_t pos = 0;
  while ((pos = data_.find("obj", pos)) != std::string_view::npos) {
    const size_t obj_pos = pos;
    pos += 3;
    if (obj_pos + 3 < data_.size() && !IsPdfWhitespace(data_[obj_pos + 3]) &&
        !IsPdfDelimiter(data_[obj_pos + 3])) {
      continue;
    }
    // Walk back over "<num> <gen> ".
    size_t i = obj_pos;
    while (i > 0 && IsPdfWhitespace(data_[i - 1])) --i;
    size_t gen_end = i;
    while (i > 0 && IsDigit(data_[i - 1])) --i;
    if (i == gen_end) continue;
    while (i > 0 && IsPdfWhitespace(data_[i - 1])) --i;
    size_t num_end = i;
    while (i > 0 && IsDigit(data_[i - 1])) --i;
    if (i == num_end) continue;
    if (i > 0 && !IsPdfWhitespace(data_[i - 1]) && !IsPdfDelimiter(data_[i - 1])) {
      continue;
    }
    const int num = std::atoi(std::string(data_.substr(i, num_end - i)).c_str());
    xref_[num] = XrefEntry{XrefEntry::Kind::kOffset, i, 0, 0};
  }
  pos = 0;
  while ((pos = data_.find("trailer", pos)) != std::string_view::npos) {
    ObjectParser parser(data_, pos + 7);
    auto dict = parser.ParseObject();
    if (dict.ok() && dict->AsDict() != nullptr) {
      for (const auto& [k, v] : *dict->AsDict()) trailer.insert_or_assign(k, v);
    }
    pos += 7;
  }
  if (Find(trailer, "Root") == nullptr) {
    for (const auto& [num, entry] : xref_) {
      auto obj = LoadObject(num);
      if (!obj.ok()) continue;
      const Dict* d = obj->AsDict();
      if (d == nullptr) continue;
      const Object type = Get(*d, "Type");
      if (type.is_name("XRef") && Find(*d, "Root") != nullptr) {
        for (const auto& [k, v] : *d) trailer.insert_or_assign(k, v);
      } else if (type.is_name("Catalog") && Find(trailer, "Root") == nullptr) {
        trailer.insert_or_assign("Root", Object(ObjRef{num, 0}));
      }
    }
  }
  // Objects living inside object streams are not visible to the scan above;
  // register them from every object stream we can find.
  std::vector<int> stream_nums;
  for (const auto& [num, entry] : xref_) stream_nums.push_back(num);
  for (int snum : stream_nums) {
    auto obj = LoadObject(snum);
    if (!obj.ok() || obj->AsStream() == nullptr) continue;
    if (!Get(obj->AsStream()->dict, "Type").is_name("ObjStm")) continue;
    auto decoded = StreamData(*obj->AsStream());
    if (!decoded.ok()) continue;
    const int n = static_cast<int>(Get(obj->AsStream()->dict, "N").AsInt().value_or(0));
    Lexer lexer(*decoded);
    for (int k = 0; k < n; ++k) {
      auto a = lexer.Next();
      auto b = lexer.Next();
      if (!a.ok() || !b.ok() || a->kind != Token::Kind::kInteger) break;
      const int inner = static_cast<int>(a->integer);
      if (!xref_.contains(inner)) {
        xref_[inner] = XrefEntry{XrefEntry::Kind::kCompressed, 0, snum, k};
      }
    }
  }
  if (xref_.empty()) return MalformedPdfError(0, "no objects found");
  trailer_ = std::move(trailer);
  if (Find(trailer_, "Root") == nullptr) {
    return MalformedPdfError(data_.size(), "no document catalog found");
  }
  return absl::OkStatus();
}

size_t Document::FindEndstream(size_t from) const {
  return data_.find("endstream", from);
}

absl::StatusOr<Object> Document::ParseIndirectAt(size_t offset,
                                                 int* num) const {
  Lexer lexer(data_, offset);
  auto t_num = lexer.Next();
  auto t_gen = lexer.Next();
  auto t_obj = lexer.Next();
  if (!t_num.ok() || !t_gen.ok() || !t_obj.ok() ||
      t_num->kind != Token::Kind::kInteger ||
      t_gen->kind != Token::Kind::kInteger || !t_obj->IsKeyword("obj")) {
    return MalformedPdfError(offset, "expected 'N G obj'");
  }
  *num = static_cast<int>(t_num->integer);
  ObjectParser parser(data_, lexer.pos());
  auto obj = parser.ParseObject();
  if (!obj.ok()) return obj.status();
  const Dict* dict = obj->AsDict();
  if (dict == nullptr) return obj;

  Lexer after(data_, parser.lexer().pos());
  auto next = after.Next();
  if (!next.ok() || !next->IsKeyword("stream")) return obj;
  size_t start = after.pos();
  if (start < data_.size() && data_[start] == '\r') ++start;
  if (start < data_.size() && data_[start] == '\n') ++start;

  auto stream = std::make_shared<Stream>();
  stream->dict = *dict;
  stream->offset = start;
  size_t length = 0;
  bool have_length = false;
  if (const Object* len = Find(*dict, "Length")) {
    Object resolved = *len;
    if (len->is_ref() && !loading_.contains(len->AsRef()->num)) {
      resolved = Resolve(*len);
    }
    if (auto l = resolved.AsInt(); l && *l >= 0) {
      length = static_cast<size_t>(*l);
      have_length = start + length <= data_.size();
    }
  }
  if (have_length) {
    Lexer check(data_, start + length);
    auto end_tok = check.Next();
    have_length = end_tok.ok() && end_tok->IsKeyword("endstream");
  }
  if (!have_length) {
    const size_t end = FindEndstream(start);
    if (end == std::string_view::npos) {
      return MalformedPdfError(start, "unterminated stream");
    }
    size_t stop = end;
    if (stop > start && data_[stop - 1] == '\n') --stop;
    if (stop > start && data_[stop - 1] == '\r') --stop;
    length = stop - start;
  }
  stream->data = std::string(data_.substr(start, length));
  return Object(std::shared_ptr<const Stream>(std::move(stream)));
}

absl::StatusOr<Object> Document::LoadFromObjectStream(int stream_num,
                                                      int num) const {
  auto it = object_streams_.find(stream_num);
  if (it == object_streams_.end()) {
    auto container = LoadObject(stream_num);
    if (!container.ok()) return container.status();
    const Stream* s = container->AsStream();
    if (s == nullptr) return absl::NotFoundError("object stream missing");
    auto decoded = StreamData(*s);
    if (!decoded.ok()) return decoded.status();
    const int n = static_cast<int>(Get(s->dict, "N").AsInt().value_or(0));
    const size_t first =
        static_cast<size_t>(Get(s->dict, "First").AsInt().value_or(0));
    std::vector<std::pair<int, size_t>> entries;
    Lexer lexer(*decoded);
    for (int k = 0; k < n; ++k) {
      auto a = lexer.Next();
      auto b = lexer.Next();
      if (!a.ok() || !b.ok() || a->kind != Token::Kind::kInteger ||
          b->kind != Token::Kind::kInteger) {
        break;
      }
      entries.emplace_back(static_cast<int>(a->integer),
                           static_cast<size_t>(b->integer));
    }
    std::map<int, Object> objects;
    for (const auto& [objnum, off] : entries) {
      if (first + off >= decoded->size()) continue;
      ObjectParser parser(*decoded, first + off);
      auto obj = parser.ParseObject();
      if (obj.ok()) objects.emplace(objnum, *std::move(obj));
    }
    it = object_streams_.emplace(stream_num, std::move(objects)).first;
  }
  const auto found = it->second.find(num);
  if (found == it->second.end()) {
    return absl::NotFoundError(absl::StrCat("object ", num, " not in stream"));
  }
  return found->second;
}

absl::StatusOr<Object> Document::LoadObject(int num) const {
  if (const auto it = cache_.find(num); it != cache_.end()) return it->second;
  const auto entry = xref_.find(num);
  if (entry == xref_.end()) {
    return absl::NotFoundError(absl::StrCat("object ", num, " not in xref"));
  }
  if (!loading_.insert(num).second) {
    return absl::FailedPreconditionError("reference cycle");
  }
  absl::StatusOr<Object> obj;
  if (entry->second.kind == XrefEntry::Kind::kOffset) {
    int parsed_num = 0;
    obj = ParseIndirectAt(entry->second.offset, &parsed_num);
  } else {
    obj = LoadFromObjectStream(entry->second.stream_num, num);
  }
  loading_.erase(num);
  if (obj.ok()) cache_.emplace(num, *obj);
  return obj;
}

Object Document::Resolve(const Object& o) const {
  Object current = o;
  for (int depth = 0; depth < kMaxResolveDepth && current.is_ref(); ++depth) {
    auto loaded = LoadObject(current.AsRef()->num);
    if (!loaded.ok()) return Object();
    current = *std::move(loaded);
  }
  return current.is_ref() ? Object() : current;
}

Object Document::Get(const Dict& dict, std::string_view key) const {
  const Object* o = Find(dict, key);
  return o == nullptr ? Object() : Resolve(*o);
}

absl::StatusOr<std::string> Document::StreamData(const Stream& stream) const {
  const Object filter = Get(stream.dict, "Filter");
  Object params = Get(stream.dict, "DecodeParms");
  if (params.is_null()) params = Get(stream.dict, "DP");
  if (const Array* pa = params.AsArray()) {
    Array resolved;
    for (const Object& p : *pa) resolved.push_back(Resolve(p));
    params = Object(std::move(resolved));
  }
  if (const Array* fa = filter.AsArray()) {
    Array resolved;
    for (const Object& f : *fa) resolved.push_back(Resolve(f));
    return DecodeFilters(stream.data, Object(std::move(resolved)), params);
  }
  return DecodeFilters(stream.data, filter, params);
}

Dict Document::Info() const {
  const Object info = Get(trailer_, "Info");
  if (const Dict* d = info.AsDict()) return *d;
  return {};
}

absl::StatusOr<std::vector<PageRecord>> Document::Pages() const {
  const Object root = Get(trailer_, "Root");
  const Dict* catalog = root.AsDict();
  if (catalog == nullptr) return MalformedPdfError(0, "catalog missing");
  const Object* pages = Find(*catalog, "Pages");
  if (pages == nullptr) return MalformedPdfError(0, "catalog has no /Pages");
  std::vector<PageRecord> out;
  std::set<int> visited;
  const double default_box[4] = {0, 0, 612, 792};
  CollectPages(*pages, Dict(), default_box, 0, &visited, &out, 0);
  return out;
}

void Document::CollectPages(const Object& node, const Dict& inherited_resources,
                            const double* inherited_box, int inherited_rotate,
                            std::set<int>* visited,
                            std::vector<PageRecord>* out, int depth) const {
  if (depth > kMaxPageTreeDepth) return;
  if (const auto ref = node.AsRef()) {
    if (!visited->insert(ref->num).second) return;
  }
  const Object resolved = Resolve(node);
  const Dict* dict = resolved.AsDict();
  if (dict == nullptr) return;

  Dict resources = inherited_resources;
  if (const Dict* r = Get(*dict, "Resources").AsDict()) resources = *r;
  double box[4];
  std::copy(inherited_box, inherited_box + 4, box);
  auto read_box = [&](std::string_view key, double* target) {
    const Object b = Get(*dict, key);
    const Array* a = b.AsArray();
    if (a == nullptr || a->size() != 4) return false;
    double v[4];
    for (int k = 0; k < 4; ++k) {
      const auto n = Resolve((*a)[k]).AsNumber();
      if (!n) return false;
      v[k] = *n;
    }
    target[0] = std::min(v[0], v[2]);
    target[1] = std::min(v[1], v[3]);
    target[2] = std::max(v[0], v[2]);
    target[3] = std::max(v[1], v[3]);
    return true;
  };
  read_box("MediaBox", box);
  int rotate = inherited_rotate;
  if (auto r = Get(*dict, "Rotate").AsInt()) rotate = static_cast<int>(*r);

  const Object kids = Get(*dict, "Kids");
  const Object type = Get(*dict, "Type");
  if (const Array* k = kids.AsArray(); k != nullptr && !type.is_name("Page")) {
    for (const Object& kid : *k) {
      CollectPages(kid, resources, box, rotate, visited, out, depth + 1);
    }
    return;
  }
  PageRecord page;
  page.dict = *dict;
  page.resources = std::move(resources);
  double crop[4];
  if (read_box("CropBox", crop)) {
    // The crop box is clipped to the media box.
    crop[0] = std::max(crop[0], box[0]);
    crop[1] = std::max(crop[1], box[1]);
    crop[2] = std::min(crop[2], box[2]);
    crop[3] = std::min(crop[3], box[3]);
    if (crop[2] > crop[0] && crop[3] > crop[1]) std::copy(crop, crop + 4, box);
  }
  std::copy(box, box + 4, page.box);
  rotate %= 360;
  if (rotate < 0) rotate += 360;
  page.rotate = (rotate / 90) * 90;
  out->push_back(std::move(page));
}

}  // namespace dla::pdf
