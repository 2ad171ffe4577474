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

#include "dla/eval/pdf_writer.h"

#include <cmath>
#include <cstdio>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dla/core/utf8.h"
#include "src/pdf/filters.h"

namespace dla::eval {
namespace {

WidthTable BuildWidths() {
  WidthTable w;
  w.fill(550);
  w[' '] = 250;
  for (int c = '0'; c <= '9'; ++c) w[c] = 500;
  for (int c = 'A'; c <= 'Z'; ++c) w[c] = 650;
  for (int c = 'a'; c <= 'z'; ++c) w[c] = 500;
  for (char c : std::string_view("ijlt")) w[static_cast<unsigned char>(c)] = 280;
  for (char c : std::string_view("mw")) w[static_cast<unsigned char>(c)] = 760;
  for (char c : std::string_view("MW")) w[static_cast<unsigned char>(c)] = 860;
  for (char c : std::string_view("I")) w[static_cast<unsigned char>(c)] = 300;
  for (char c : std::string_view(".,;:'!|")) {
    w[static_cast<unsigned char>(c)] = 280;
  }
  for (char c : std::string_view("()-/\"[]")) {
    w[static_cast<unsigned char>(c)] = 330;
  }
  for (int c = 0xC0; c <= 0xDE; ++c) w[c] = 650;
  for (int c = 0xDF; c <= 0xFF; ++c) w[c] = 500;
  w[0xB7] = 280;
  return w;
}

char32_t kWinAnsiHigh[32] = {
    0x20AC, 0,      0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
    0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0,      0x017D, 0,
    0,      0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0,      0x017E, 0x0178};

}  // namespace

const WidthTable& DefaultWidths() {
  static const WidthTable kWidths = BuildWidths();
  return kWidths;
}

std::string ToWinAnsi(std::string_view text) {
  std::string out;
  size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::DecodeNext(text, &pos);
    if ((cp >= 0x20 && cp < 0x7F) || (cp >= 0xA0 && cp <= 0xFF)) {
      out.push_back(static_cast<char>(cp));
      continue;
    }
    char mapped = '?';
    for (int i = 0; i < 32; ++i) {
      if (kWinAnsiHigh[i] != 0 && kWinAnsiHigh[i] == cp) {
        mapped = static_cast<char>(0x80 + i);
      }
    }
    out.push_back(mapped);
  }
  return out;
}

double TextWidth(std::string_view text, double size, const WidthTable& widths) {
  double total = 0.0;
  for (unsigned char c : ToWinAnsi(text)) total += widths[c];
  return total * size / 1000.0;
}

std::string Num(double v) {
  if (std::abs(v) < 5e-5) return "0";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string PdfString(std::string_view bytes) {
  std::string out = "(";
  for (char c : bytes) {
    if (c == '(' || c == ')' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back(')');
  return out;
}

std::string PdfWriter::AddFont(const FontSpec& font) {
  fonts_.push_back(font);
  return absl::StrCat("F", fonts_.size() - 1);
}

std::string PdfWriter::AddImage() { return absl::StrCat("Im", images_++); }

void PdfWriter::AddPage(double width, double height, std::string content,
                        std::vector<LinkSpec> links) {
  pages_.push_back({width, height, std::move(content), std::move(links)});
}

std::string PdfWriter::Finish(std::string_view creation_date) const {
  // Object numbering: 1 catalog, 2 page tree, 3 info, then fonts (with
  // descriptors), images, and per page: page, content, annotations.
  std::vector<std::string> objects(3);
  std::vector<std::string> font_refs;
  for (const FontSpec& f : fonts_) {
    std::string dict = absl::StrCat(
        "<< /Type /Font /Subtype /Type1 /BaseFont /", f.base_font,
        " /FirstChar 32 /LastChar 255 /Encoding /WinAnsiEncoding /Widths [");
    const WidthTable& w = DefaultWidths();
    for (int c = 32; c <= 255; ++c) {
      absl::StrAppend(&dict, c > 32 ? " " : "", w[c]);
    }
    dict += "]";
    if (f.with_descriptor) {
      int flags = 32;  // Nonsymbolic.
      if (f.italic) flags |= 64;
      if (f.force_bold) flags |= 262144;
      objects.push_back(absl::StrCat(
          "<< /Type /FontDescriptor /FontName /", f.base_font, " /Flags ",
          flags, " /ItalicAngle ", f.italic ? -12 : 0,
          " /Ascent 800 /Descent -200 /CapHeight 700 /StemV 80"
          " /FontBBox [-100 -200 1000 800] >>"));
      absl::StrAppend(&dict, " /FontDescriptor ", objects.size(), " 0 R");
    }
    dict += " >>";
    objects.push_back(dict);
    font_refs.push_back(absl::StrCat(objects.size(), " 0 R"));
  }
  std::vector<std::string> image_refs;
  for (int i = 0; i < images_; ++i) {
    const std::string pixels("\x40\xC0\xC0\x40", 4);
    objects.push_back(absl::StrCat(
        "<< /Type /XObject /Subtype /Image /Width 2 /Height 2"
        " /ColorSpace /DeviceGray /BitsPerComponent 8 /Length 4 >>\nstream\n",
        pixels, "\nendstream"));
    image_refs.push_back(absl::StrCat(objects.size(), " 0 R"));
  }
  std::string resources = "<< /Font <<";
  for (size_t i = 0; i < font_refs.size(); ++i) {
    absl::StrAppend(&resources, " /F", i, " ", font_refs[i]);
  }
  resources += " >> /XObject <<";
  for (size_t i = 0; i < image_refs.size(); ++i) {
    absl::StrAppend(&resources, " /Im", i, " ", image_refs[i]);
  }
  resources += " >> >>";

  std::vector<std::string> kids;
  for (const Page& page : pages_) {
    std::string data = page.content;
    std::string filter;
    if (compress_) {
      data = pdf::FlateEncode(page.content);
      filter = " /Filter /FlateDecode";
    }
    objects.push_back(absl::StrCat("<< /Length ", data.size(), filter,
                                   " >>\nstream\n", data, "\nendstream"));
    const size_t content_num = objects.size();
    std::vector<std::string> annots;
    for (const LinkSpec& link : page.links) {
      const BoundingBox& r = link.rect;
      objects.push_back(absl::StrCat(
          "<< /Type /Annot /Subtype /Link /Rect [", Num(r.x0), " ",
          Num(page.height - r.y1), " ", Num(r.x1), " ", Num(page.height - r.y0),
          "] /Border [0 0 0] /A << /S /URI /URI ", PdfString(link.uri),
          " >> >>"));
      annots.push_back(absl::StrCat(objects.size(), " 0 R"));
    }
    std::string dict = absl::StrCat(
        "<< /Type /Page /Parent 2 0 R /MediaBox [0 0 ", Num(page.width), " ",
        Num(page.height), "] /Resources ", resources, " /Contents ",
        content_num, " 0 R");
    if (!annots.empty()) {
      absl::StrAppend(&dict, " /Annots [", absl::StrJoin(annots, " "), "]");
    }
    dict += " >>";
    objects.push_back(dict);
    kids.push_back(absl::StrCat(objects.size(), " 0 R"));
  }
  objects[0] = "<< /Type /Catalog /Pages 2 0 R >>";
  objects[1] = absl::StrCat("<< /Type /Pages /Kids [", absl::StrJoin(kids, " "),
                            "] /Count ", kids.size(), " >>");
  objects[2] = creation_date.empty()
                   ? "<< /Producer (dla synth) >>"
                   : absl::StrCat("<< /Producer (dla synth) /CreationDate ",
                                  PdfString(creation_date), " >>");

  std::string out = "%PDF-1.5\n%\xE2\xE3\xCF\xD3\n";
  std::vector<size_t> offsets;
  for (size_t i = 0; i < objects.size(); ++i) {
    offsets.push_back(out.size());
    absl::StrAppend(&out, i + 1, " 0 obj\n", objects[i], "\nendobj\n");
  }
  const size_t xref = out.size();
  absl::StrAppend(&out, "xref\n0 ", objects.size() + 1,
                  "\n0000000000 65535 f \n");
  for (size_t off : offsets) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%010zu 00000 n \n", off);
    out += buf;
  }
  absl::StrAppend(&out, "trailer\n<< /Size ", objects.size() + 1,
                  " /Root 1 0 R /Info 3 0 R >>\nstartxref\n", xref,
                  "\n%%EOF\n");
  return out;
}

}  // namespace dla::eval
