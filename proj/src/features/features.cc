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

#include "dla/features/features.h"

#include <algorithm>
#include <set>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "dla/core/strings.h"
#include "dla/core/utf8.h"
#include "dla/pdf/text_blocks.h"

namespace dla::features {

absl::StatusOr<FeatureVector> ComputeFeatures(const LayoutBlock& block,
                                              const PageGeometry& g) {
  FeatureVector fv;
  fv.f1 = block.page_index;
  fv.f2 = block.bbox.x0;
  fv.f3 = block.bbox.y0;
  fv.f4 = block.bbox.x1;
  fv.f5 = block.bbox.y1;
  const Point c = Center(block.bbox);
  fv.f6 = c.x;
  fv.f7 = c.y;
  const PageMargins m = ComputePageMargins(block.bbox, g);
  fv.f8 = m.left;
  fv.f9 = m.top;
  fv.f10 = m.right;
  fv.f11 = m.bottom;
  fv.f12 = block.payload;
  fv.b = block.kind;
  fv.l = block.label;
  if (block.kind != BlockKind::kText) return fv;

  const std::string payload = block.payload.value_or("");
  const std::vector<pdf::AttributedToken> tokens =
      pdf::AttributeTokens(payload, block.spans);
  if (tokens.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("block ", block.block_id, ": empty text payload"));
  }
  TextFeatures tf;
  tf.f18 = static_cast<int>(tokens.size());
  int bold = 0, italic = 0;
  double size_sum = 0.0;
  for (const pdf::AttributedToken& t : tokens) {
    if (t.span_index < 0) continue;
    const TextSpan& s = block.spans[t.span_index];
    bold += s.bold;
    italic += s.italic;
    size_sum += s.font_size;
  }
  tf.f13 = static_cast<double>(bold) / tf.f18;
  tf.f14 = static_cast<double>(italic) / tf.f18;
  tf.f15 = size_sum / tf.f18;
  std::set<std::string> fonts;
  for (const TextSpan& s : block.spans) fonts.insert(s.font_name);
  tf.f16.assign(fonts.begin(), fonts.end());
  int letters = 0, upper = 0;
  size_t pos = 0;
  while (pos < payload.size()) {
    const char32_t cp = utf8::DecodeNext(payload, &pos);
    if (!utf8::IsLetter(cp)) continue;
    ++letters;
    upper += utf8::IsUpper(cp);
  }
  tf.f17 = letters == 0 ? 0.0 : static_cast<double>(upper) / letters;
  fv.text = std::move(tf);
  return fv;
}

std::string FontDictionary::Key(const std::vector<std::string>& fonts) {
  return absl::StrJoin(fonts, "|");
}

int FontDictionary::Register(const std::vector<std::string>& fonts) {
  const std::string key = Key(fonts);
  if (const auto it = codes_.find(key); it != codes_.end()) return it->second;
  tuples_.push_back(fonts);
  const int code = static_cast<int>(tuples_.size());
  codes_.emplace(key, code);
  return code;
}

int FontDictionary::Encode(const std::vector<std::string>& fonts) const {
  const auto it = codes_.find(Key(fonts));
  return it == codes_.end() ? kUnseen : it->second;
}

std::optional<std::vector<std::string>> FontDictionary::Decode(int code) const {
  if (code < 1 || code > static_cast<int>(tuples_.size())) return std::nullopt;
  return tuples_[code - 1];
}

std::string FontDictionary::Serialize() const {
  std::string out;
  for (size_t i = 0; i < tuples_.size(); ++i) {
    absl::StrAppend(&out, i + 1, "\t", Key(tuples_[i]), "\n");
  }
  return out;
}

absl::StatusOr<FontDictionary> FontDictionary::Parse(std::string_view text) {
  FontDictionary fd;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(ToAbsl(text), '\n')) {
    ++line_no;
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    int code = 0;
    if (tab == absl::string_view::npos ||
        !absl::SimpleAtoi(line.substr(0, tab), &code)) {
      return absl::DataLossError(
          absl::StrCat("fonts.tsv line ", line_no, ": expected code<TAB>fonts"));
    }
    if (code != static_cast<int>(fd.tuples_.size()) + 1) {
      return absl::DataLossError(
          absl::StrCat("fonts.tsv line ", line_no, ": code ", code,
                       " out of sequence"));
    }
    const absl::string_view names = line.substr(tab + 1);
    std::vector<std::string> fonts;
    if (!names.empty()) fonts = absl::StrSplit(names, '|');
    if (fd.Register(fonts) != code) {
      return absl::DataLossError(
          absl::StrCat("fonts.tsv line ", line_no, ": duplicate tuple"));
    }
  }
  return fd;
}

absl::StatusOr<ClassifierInput> NormalizeForClassifier(
    const FeatureVector& fv, const PageGeometry& g, const FontDictionary& fd) {
  if (!fv.text.has_value()) {
    return absl::InvalidArgumentError("classifier input needs a text block");
  }
  const TextFeatures& t = *fv.text;
  const double w = g.width;
  const double h = g.height;
  ClassifierInput in;
  in.values = {static_cast<double>(fv.f1),
               fv.f2 / w,
               fv.f3 / h,
               fv.f4 / w,
               fv.f5 / h,
               fv.f6 / w,
               fv.f7 / h,
               fv.f8 / w,
               fv.f9 / h,
               fv.f10 / w,
               fv.f11 / h,
               t.f13,
               t.f14,
               t.f15,
               static_cast<double>(fd.Encode(t.f16)),
               t.f17,
               static_cast<double>(t.f18)};
  return in;
}

}  // namespace dla::features
