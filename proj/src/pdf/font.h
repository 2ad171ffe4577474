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

#ifndef DLA_SRC_PDF_FONT_H_
#define DLA_SRC_PDF_FONT_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dla/pdf/object.h"
#include "src/pdf/document.h"

namespace dla::pdf {

struct Glyph {
  uint32_t code = 0;
  std::string text;    // UTF-8; empty when the code has no mapping.
  double width = 0.0;  // Horizontal displacement in text-space units per em.
  bool word_space = false;  // Single-byte code 32, subject to Tw.
};

// Maps character codes to Unicode using a ToUnicode CMap.
class ToUnicodeMap {
 public:
  static ToUnicodeMap Parse(std::string_view cmap);

  bool empty() const { return map_.empty(); }
  // Number of bytes per code, from the codespace ranges (0 if unknown).
  int code_bytes() const { return code_bytes_; }
  const std::string* Lookup(uint32_t code) const;

 private:
  std::map<uint32_t, std::string> map_;
  int code_bytes_ = 0;
};

// Decodes a UTF-16BE byte string to UTF-8.
std::string Utf16BeToUtf8(std::string_view bytes);

// Unicode value for an Adobe glyph name, or 0 when unknown.
char32_t GlyphNameToUnicode(std::string_view name);

// Unicode for single-byte codes under the named base encodings.
char32_t WinAnsiToUnicode(uint8_t code);
char32_t MacRomanToUnicode(uint8_t code);
char32_t StandardToUnicode(uint8_t code);

// Drops a "ABCDEF+" subset tag from a base font name.
std::string StripSubsetPrefix(std::string_view name);

class Font {
 public:
  static std::shared_ptr<const Font> Load(const Document& doc,
                                          const Dict& font_dict);
  // Fallback used when a font resource is missing or broken.
  static std::shared_ptr<const Font> Default();

  std::vector<Glyph> Decode(std::string_view bytes) const;

  const std::string& name() const { return name_; }
  bool bold() const { return bold_; }
  bool italic() const { return italic_; }
  double ascent() const { return ascent_; }
  double descent() const { return descent_; }

 private:
  Font() = default;
  double WidthOf(uint32_t code) const;

  std::string name_ = "Unknown";
  bool bold_ = false;
  bool italic_ = false;
  double ascent_ = 0.8;
  double descent_ = -0.2;
  bool two_byte_ = false;
  double width_scale_ = 0.001;  // Glyph units to text space.
  double default_width_ = 500.0;
  int first_char_ = 0;
  std::vector<double> widths_;
  std::map<uint32_t, double> cid_widths_;
  char32_t encoding_[256] = {};
  ToUnicodeMap to_unicode_;
};

}  // namespace dla::pdf

#endif  // DLA_SRC_PDF_FONT_H_
