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

// Minimal PDF producer used by the synthetic corpus generator and tests.

#ifndef DLA_EVAL_PDF_WRITER_H_
#define DLA_EVAL_PDF_WRITER_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "dla/core/layout.h"

namespace dla::eval {

// Advance widths in thousandths of an em for WinAnsi codes.
using WidthTable = std::array<int, 256>;

// The generator's glyph metrics: a coarse proportional table.
const WidthTable& DefaultWidths();

// Width of UTF-8 `text` in points at `size`, using `widths`.
double TextWidth(std::string_view text, double size, const WidthTable& widths);

// UTF-8 to WinAnsi bytes; unmappable characters become '?'.
std::string ToWinAnsi(std::string_view utf8);

struct FontSpec {
  std::string base_font;
  // When set, a FontDescriptor carries these flags, ItalicAngle and
  // Ascent 800 / Descent -200.
  bool with_descriptor = false;
  bool force_bold = false;
  bool italic = false;
};

struct LinkSpec {
  BoundingBox rect;  // Page frame.
  std::string uri;
};

class PdfWriter {
 public:
  explicit PdfWriter(bool compress = true) : compress_(compress) {}

  // Returns the resource name (F0, F1, ...).
  std::string AddFont(const FontSpec& font);
  // Registers a tiny grayscale image XObject; returns its resource name.
  std::string AddImage();

  void AddPage(double width, double height, std::string content,
               std::vector<LinkSpec> links = {});

  // Serializes the document. `creation_date` is a PDF date string
  // ("D:YYYYMMDD...") or empty.
  std::string Finish(std::string_view creation_date) const;

 private:
  struct Page {
    double width;
    double height;
    std::string content;
    std::vector<LinkSpec> links;
  };

  bool compress_;
  std::vector<FontSpec> fonts_;
  int images_ = 0;
  std::vector<Page> pages_;
};

// Content-stream string literal with escapes, from raw bytes.
std::string PdfString(std::string_view bytes);

// Formats a number compactly with up to 4 decimals.
std::string Num(double v);

}  // namespace dla::eval

#endif  // DLA_EVAL_PDF_WRITER_H_
