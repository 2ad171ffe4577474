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

#include "src/pdf/font.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "dla/core/strings.h"
#include "dla/core/utf8.h"
#include "src/pdf/lexer.h"

namespace dla::pdf {
namespace {

constexpr int kFlagItalic = 1 << 6;
constexpr int kFlagForceBold = 1 << 18;

constexpr char32_t kWinAnsiHigh[32] = {
    0x20AC, 0,      0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
    0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0,      0x017D, 0,
    0,      0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0,      0x017E, 0x0178};

constexpr char32_t kMacRomanHigh[128] = {
    0xC4,   0xC5,   0xC7,   0xC9,   0xD1,   0xD6,   0xDC,   0xE1,
    0xE0,   0xE2,   0xE4,   0xE3,   0xE5,   0xE7,   0xE9,   0xE8,
    0xEA,   0xEB,   0xED,   0xEC,   0xEE,   0xEF,   0xF1,   0xF3,
    0xF2,   0xF4,   0xF6,   0xF5,   0xFA,   0xF9,   0xFB,   0xFC,
    0x2020, 0xB0,   0xA2,   0xA3,   0xA7,   0x2022, 0xB6,   0xDF,
    0xAE,   0xA9,   0x2122, 0xB4,   0xA8,   0x2260, 0xC6,   0xD8,
    0x221E, 0xB1,   0x2264, 0x2265, 0xA5,   0xB5,   0x2202, 0x2211,
    0x220F, 0x03C0, 0x222B, 0xAA,   0xBA,   0x03A9, 0xE6,   0xF8,
    0xBF,   0xA1,   0xAC,   0x221A, 0x0192, 0x2248, 0x2206, 0xAB,
    0xBB,   0x2026, 0xA0,   0xC0,   0xC3,   0xD5,   0x0152, 0x0153,
    0x2013, 0x2014, 0x201C, 0x201D, 0x2018, 0x2019, 0xF7,   0x25CA,
    0xFF,   0x0178, 0x2044, 0x20AC, 0x2039, 0x203A, 0xFB01, 0xFB02,
    0x2021, 0xB7,   0x201A, 0x201E, 0x2030, 0xC2,   0xCA,   0xC1,
    0xCB,   0xC8,   0xCD,   0xCE,   0xCF,   0xCC,   0xD3,   0xD4,
    0xF8FF, 0xD2,   0xDA,   0xDB,   0xD9,   0x0131, 0x02C6, 0x02DC,
    0xAF,   0x02D8, 0x02D9, 0x02DA, 0xB8,   0x02DD, 0x02DB, 0x02C7};

// Glyph names of U+00C0..U+00FF in order.
constexpr const char* kLatin1Names[64] = {
    "Agrave",    "Aacute", "Acircumflex", "Atilde",     "Adieresis",
    "Aring",     "AE",     "Ccedilla",    "Egrave",     "Eacute",
    "Ecircumflex", "Edieresis", "Igrave", "Iacute",     "Icircumflex",
    "Idieresis", "Eth",    "Ntilde",      "Ograve",     "Oacute",
    "Ocircumflex", "Otilde", "Odieresis", "multiply",   "Oslash",
    "Ugrave",    "Uacute", "Ucircumflex", "Udieresis",  "Yacute",
    "Thorn",     "germandbls", "agrave",  "aacute",     "acircumflex",
    "atilde",    "adieresis", "aring",    "ae",         "ccedilla",
    "egrave",    "eacute", "ecircumflex", "edieresis",  "igrave",
    "iacute",    "icircumflex", "idieresis", "eth",     "ntilde",
    "ograve",    "oacute", "ocircumflex", "otilde",     "odieresis",
    "divide",    "oslash", "ugrave",      "uacute",     "ucircumflex",
    "udieresis", "yacute", "thorn",       "ydieresis"};

struct NamedGlyph {
  const char* name;
  char32_t cp;
};

constexpr NamedGlyph kNamedGlyphs[] = {
    {"space", ' '},          {"exclam", '!'},        {"quotedbl", '"'},
    {"numbersign", '#'},     {"dollar", '$'},        {"percent", '%'},
    {"ampersand", '&'},      {"quotesingle", '\''},  {"quoteright", 0x2019},
    {"parenleft", '('},      {"parenright", ')'},    {"asterisk", '*'},
    {"plus", '+'},           {"comma", ','},         {"hyphen", '-'},
    {"minus", 0x2212},       {"period", '.'},        {"slash", '/'},
    {"zero", '0'},           {"one", '1'},           {"two", '2'},
    {"three", '3'},          {"four", '4'},          {"five", '5'},
    {"six", '6'},            {"seven", '7'},         {"eight", '8'},
    {"nine", '9'},           {"colon", ':'},         {"semicolon", ';'},
    {"less", '<'},           {"equal", '='},         {"greater", '>'},
    {"question", '?'},       {"at", '@'},            {"bracketleft", '['},
    {"backslash", '\\'},     {"bracketright", ']'},  {"asciicircum", '^'},
    {"underscore", '_'},     {"grave", '`'},         {"quoteleft", 0x2018},
    {"braceleft", '{'},      {"bar", '|'},           {"braceright", '}'},
    {"asciitilde", '~'},     {"exclamdown", 0xA1},   {"cent", 0xA2},
    {"sterling", 0xA3},      {"currency", 0xA4},     {"yen", 0xA5},
    {"brokenbar", 0xA6},     {"section", 0xA7},      {"dieresis", 0xA8},
    {"copyright", 0xA9},     {"ordfeminine", 0xAA},  {"guillemotleft", 0xAB},
    {"logicalnot", 0xAC},    {"registered", 0xAE},   {"macron", 0xAF},
    {"degree", 0xB0},        {"plusminus", 0xB1},    {"acute", 0xB4},
    {"mu", 0xB5},            {"paragraph", 0xB6},    {"periodcentered", 0xB7},
    {"cedilla", 0xB8},       {"ordmasculine", 0xBA}, {"guillemotright", 0xBB},
    {"onequarter", 0xBC},    {"onehalf", 0xBD},      {"threequarters", 0xBE},
    {"questiondown", 0xBF},  {"endash", 0x2013},     {"emdash", 0x2014},
    {"bullet", 0x2022},      {"ellipsis", 0x2026},   {"quotedblleft", 0x201C},
    {"quotedblright", 0x201D}, {"quotesinglbase", 0x201A},
    {"quotedblbase", 0x201E}, {"dagger", 0x2020},    {"daggerdbl", 0x2021},
    {"perthousand", 0x2030}, {"trademark", 0x2122},  {"Euro", 0x20AC},
    {"euro", 0x20AC},        {"fi", 0xFB01},         {"fl", 0xFB02},
    {"ff", 0xFB00},          {"ffi", 0xFB03},        {"ffl", 0xFB04},
    {"dotlessi", 0x131},     {"OE", 0x152},          {"oe", 0x153},
    {"Scaron", 0x160},       {"scaron", 0x161},      {"Zcaron", 0x17D},
    {"zcaron", 0x17E},       {"Ydieresis", 0x178},   {"florin", 0x192},
    {"circumflex", 0x2C6},   {"tilde", 0x2DC},       {"nbspace", 0xA0},
    {"sfthyphen", 0xAD},     {"middot", 0xB7},       {"Lslash", 0x141},
    {"lslash", 0x142},       {"guilsinglleft", 0x2039},
    {"guilsinglright", 0x203A}};

int HexDigit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

uint32_t BytesToCode(std::string_view bytes) {
  uint32_t v = 0;
  for (char c : bytes) v = (v << 8) | static_cast<unsigned char>(c);
  return v;
}

// Adds 1 to the last code unit of a UTF-16BE destination string.
std::string IncrementUtf16(std::string s, uint32_t delta) {
  if (s.size() < 2) return s;
  uint32_t last = (static_cast<unsigned char>(s[s.size() - 2]) << 8) |
                  static_cast<unsigned char>(s[s.size() - 1]);
  last += delta;
  s[s.size() - 2] = static_cast<char>((last >> 8) & 0xFF);
  s[s.size() - 1] = static_cast<char>(last & 0xFF);
  return s;
}

}  // namespace

std::string Utf16BeToUtf8(std::string_view bytes) {
  std::string out;
  for (size_t i = 0; i + 1 < bytes.size(); i += 2) {
    char32_t unit = (static_cast<unsigned char>(bytes[i]) << 8) |
                    static_cast<unsigned char>(bytes[i + 1]);
    if (unit >= 0xD800 && unit <= 0xDBFF && i + 3 < bytes.size()) {
      const char32_t low = (static_cast<unsigned char>(bytes[i + 2]) << 8) |
                           static_cast<unsigned char>(bytes[i + 3]);
      if (low >= 0xDC00 && low <= 0xDFFF) {
        unit = 0x10000 + ((unit - 0xD800) << 10) + (low - 0xDC00);
        i += 2;
      }
    }
    utf8::Append(unit, &out);
  }
  return out;
}

char32_t GlyphNameToUnicode(std::string_view name) {
  if (name.size() == 1 && std::isalpha(static_cast<unsigned char>(name[0]))) {
    return static_cast<unsigned char>(name[0]);
  }
  for (int i = 0; i < 64; ++i) {
    if (name == kLatin1Names[i]) return 0xC0 + i;
  }
  for (const auto& g : kNamedGlyphs) {
    if (name == g.name) return g.cp;
  }
  auto parse_hex = [](std::string_view hex) -> char32_t {
    if (hex.size() < 4 || hex.size() > 6) return 0;
    char32_t v = 0;
    for (char c : hex) {
      const int d = HexDigit(c);
      if (d < 0) return 0;
      v = v * 16 + d;
    }
    return v;
  };
  if (name.starts_with("uni") && name.size() >= 7) {
    return parse_hex(name.substr(3, 4));
  }
  if (name.size() >= 5 && name[0] == 'u') return parse_hex(name.substr(1));
  // Suffixed variants such as "a.sc" or "one.oldstyle".
  const size_t dot = name.find('.');
  if (dot != std::string_view::npos && dot > 0) {
    return GlyphNameToUnicode(name.substr(0, dot));
  }
  return 0;
}

char32_t WinAnsiToUnicode(uint8_t code) {
  if (code >= 0x80 && code < 0xA0) return kWinAnsiHigh[code - 0x80];
  if (code < 0x20) return 0;
  return code;
}

char32_t MacRomanToUnicode(uint8_t code) {
  if (code >= 0x80) return kMacRomanHigh[code - 0x80];
  if (code < 0x20) return 0;
  return code;
}

char32_t StandardToUnicode(uint8_t code) {
  switch (code) {
    case 0x27:
      return 0x2019;
    case 0x60:
      return 0x2018;
    case 0xA1:
      return 0xA1;
    case 0xA2:
      return 0xA2;
    case 0xA3:
      return 0xA3;
    case 0xA7:
      return 0xA7;
    case 0xAA:
      return 0x201C;
    case 0xAB:
      return 0xAB;
    case 0xAE:
      return 0xFB01;
    case 0xAF:
      return 0xFB02;
    case 0xB1:
      return 0x2013;
    case 0xB7:
      return 0x2022;
    case 0xBA:
      return 0x201D;
    case 0xBB:
      return 0xBB;
    case 0xBC:
      return 0x2026;
    case 0xBF:
      return 0xBF;
    case 0xD0:
      return 0x2014;
    case 0xE1:
      return 0xC6;
    case 0xE8:
      return 0x141;
    case 0xE9:
      return 0xD8;
    case 0xEA:
      return 0x152;
    case 0xF1:
      return 0xE6;
    case 0xF5:
      return 0x131;
    case 0xF8:
      return 0x142;
    case 0xF9:
      return 0xF8;
    case 0xFA:
      return 0x153;
    case 0xFB:
      return 0xDF;
    default:
      break;
  }
  if (code < 0x20 || code >= 0x80) return 0;
  return code;
}

std::string StripSubsetPrefix(std::string_view name) {
  if (name.size() > 7 && name[6] == '+' &&
      std::all_of(name.begin(), name.begin() + 6,
                  [](char c) { return c >= 'A' && c <= 'Z'; })) {
    return std::string(name.substr(7));
  }
  return std::string(name);
}

ToUnicodeMap ToUnicodeMap::Parse(std::string_view cmap) {
  ToUnicodeMap m;
  Lexer lexer(cmap);
  std::vector<Token> operands;
  int min_bytes = 0, max_bytes = 0;
  while (true) {
    auto tok = lexer.Next();
    if (!tok.ok()) {
      lexer.set_pos(lexer.pos() + 1);
      if (lexer.AtEnd()) break;
      continue;
    }
    if (tok->kind == Token::Kind::kEof) break;
    if (tok->kind != Token::Kind::kKeyword) {
      if (tok->kind == Token::Kind::kArrayBegin) {
        // Arrays only appear as bfrange destinations; gather their strings.
        Token arr;
        arr.kind = Token::Kind::kArrayBegin;
        std::vector<std::string> items;
        while (true) {
          auto inner = lexer.Next();
          if (!inner.ok() || inner->kind == Token::Kind::kEof ||
              inner->kind == Token::Kind::kArrayEnd) {
            break;
          }
          if (inner->kind == Token::Kind::kString) items.push_back(inner->text);
        }
        // Encode the list as NUL-separated entries.
        for (size_t i = 0; i < items.size(); ++i) {
          if (i > 0) arr.text.push_back('\0');
          arr.text += items[i];
        }
        arr.integer = static_cast<int64_t>(items.size());
        operands.push_back(std::move(arr));
      } else {
        operands.push_back(*std::move(tok));
      }
      continue;
    }
    const std::string& op = tok->text;
    if (op == "endcodespacerange") {
      for (size_t i = 0; i + 1 < operands.size(); i += 2) {
        const int n = static_cast<int>(operands[i].text.size());
        if (n == 0) continue;
        min_bytes = min_bytes == 0 ? n : std::min(min_bytes, n);
        max_bytes = std::max(max_bytes, n);
      }
    } else if (op == "endbfchar") {
      for (size_t i = 0; i + 1 < operands.size(); i += 2) {
        if (operands[i].kind != Token::Kind::kString) continue;
        const uint32_t code = BytesToCode(operands[i].text);
        std::string dst;
        if (operands[i + 1].kind == Token::Kind::kString) {
          dst = Utf16BeToUtf8(operands[i + 1].text);
        } else if (operands[i + 1].kind == Token::Kind::kName) {
          if (char32_t cp = GlyphNameToUnicode(operands[i + 1].text)) {
            utf8::Append(cp, &dst);
          }
        }
        m.map_[code] = dst;
        if (min_bytes == 0) {
          min_bytes = max_bytes = static_cast<int>(operands[i].text.size());
        }
      }
    } else if (op == "endbfrange") {
      for (size_t i = 0; i + 2 < operands.size(); i += 3) {
        const uint32_t lo = BytesToCode(operands[i].text);
        const uint32_t hi = BytesToCode(operands[i + 1].text);
        if (hi < lo || hi - lo > 0xFFFF) continue;
        const Token& dst = operands[i + 2];
        if (dst.kind == Token::Kind::kArrayBegin) {
          size_t start = 0;
          for (uint32_t c = lo; c <= hi; ++c) {
            const size_t end = dst.text.find('\0', start);
            const std::string_view item =
                std::string_view(dst.text).substr(
                    start, end == std::string::npos ? std::string::npos
                                                    : end - start);
            m.map_[c] = Utf16BeToUtf8(item);
            if (end == std::string::npos) break;
            start = end + 1;
          }
        } else {
          for (uint32_t c = lo; c <= hi; ++c) {
            m.map_[c] = Utf16BeToUtf8(IncrementUtf16(dst.text, c - lo));
          }
        }
        if (min_bytes == 0) {
          min_bytes = max_bytes = static_cast<int>(operands[i].text.size());
        }
      }
    }
    operands.clear();
  }
  m.code_bytes_ = (min_bytes == max_bytes) ? min_bytes : 0;
  return m;
}

const std::string* ToUnicodeMap::Lookup(uint32_t code) const {
  const auto it = map_.find(code);
  return it == map_.end() ? nullptr : &it->second;
}

std::shared_ptr<const Font> Font::Default() {
  static const std::shared_ptr<const Font> kDefault = [] {
    auto f = std::shared_ptr<Font>(new Font());
    for (int c = 0; c < 256; ++c) {
      f->encoding_[c] = WinAnsiToUnicode(static_cast<uint8_t>(c));
    }
    return std::shared_ptr<const Font>(f);
  }();
  return kDefault;
}

std::shared_ptr<const Font> Font::Load(const Document& doc,
                                       const Dict& font_dict) {
  auto font = std::shared_ptr<Font>(new Font());
  const Object subtype = doc.Get(font_dict, "Subtype");
  const bool type0 = subtype.is_name("Type0");
  const bool type3 = subtype.is_name("Type3");
  const Object base_font = doc.Get(font_dict, "BaseFont");
  const Object plain_name = doc.Get(font_dict, "Name");
  if (const std::string* base = base_font.AsName()) {
    font->name_ = StripSubsetPrefix(*base);
  } else if (const std::string* n = plain_name.AsName()) {
    font->name_ = *n;
  }

  Dict descendant;
  if (type0) {
    font->two_byte_ = true;
    font->default_width_ = 1000.0;
    const Object desc = doc.Get(font_dict, "DescendantFonts");
    if (const Array* a = desc.AsArray(); a != nullptr && !a->empty()) {
      if (const Dict* d = doc.Resolve((*a)[0]).AsDict()) descendant = *d;
    }
    if (auto dw = doc.Get(descendant, "DW").AsNumber()) {
      font->default_width_ = *dw;
    }
    const Object w = doc.Get(descendant, "W");
    if (const Array* wa = w.AsArray()) {
      size_t i = 0;
      while (i < wa->size()) {
        const auto first = doc.Resolve((*wa)[i]).AsInt();
        if (!first || i + 1 >= wa->size()) break;
        const Object next = doc.Resolve((*wa)[i + 1]);
        if (const Array* list = next.AsArray()) {
          for (size_t k = 0; k < list->size(); ++k) {
            font->cid_widths_[static_cast<uint32_t>(*first + k)] =
                doc.Resolve((*list)[k]).AsNumber().value_or(
                    font->default_width_);
          }
          i += 2;
        } else {
          if (i + 2 >= wa->size()) break;
          const auto last = next.AsInt();
          const auto width = doc.Resolve((*wa)[i + 2]).AsNumber();
          if (last && width && *last >= *first && *last - *first < 65536) {
            for (int64_t c = *first; c <= *last; ++c) {
              font->cid_widths_[static_cast<uint32_t>(c)] = *width;
            }
          }
          i += 3;
        }
      }
    }
  } else {
    font->first_char_ =
        static_cast<int>(doc.Get(font_dict, "FirstChar").AsInt().value_or(0));
    const Object widths = doc.Get(font_dict, "Widths");
    if (const Array* wa = widths.AsArray()) {
      for (const Object& w : *wa) {
        font->widths_.push_back(doc.Resolve(w).AsNumber().value_or(0.0));
      }
    }
    if (ContainsIgnoreCase(font->name_, "Courier")) {
      font->default_width_ = 600.0;
    }
  }
  if (type3) {
    const Object fm = doc.Get(font_dict, "FontMatrix");
    if (const Array* m = fm.AsArray(); m != nullptr && !m->empty()) {
      font->width_scale_ = doc.Resolve((*m)[0]).AsNumber().value_or(0.001);
    }
  }

  const Dict& desc_source = type0 ? descendant : font_dict;
  const Object descriptor = doc.Get(desc_source, "FontDescriptor");
  if (const Dict* fd = descriptor.AsDict()) {
    const int flags =
        static_cast<int>(doc.Get(*fd, "Flags").AsInt().value_or(0));
    if (flags & kFlagForceBold) font->bold_ = true;
    if (flags & kFlagItalic) font->italic_ = true;
    if (doc.Get(*fd, "FontWeight").AsNumber().value_or(0) >= 700) {
      font->bold_ = true;
    }
    if (doc.Get(*fd, "ItalicAngle").AsNumber().value_or(0) != 0) {
      font->italic_ = true;
    }
    const double ascent = doc.Get(*fd, "Ascent").AsNumber().value_or(0);
    const double descent = doc.Get(*fd, "Descent").AsNumber().value_or(0);
    if (ascent > 0 && ascent <= 2000 && descent <= 0 && descent >= -1000) {
      font->ascent_ = ascent / 1000.0;
      font->descent_ = descent / 1000.0;
    }
    if (auto mw = doc.Get(*fd, "MissingWidth").AsNumber(); mw && *mw > 0) {
      if (!type0) font->default_width_ = *mw;
    }
  }
  if (ContainsIgnoreCase(font->name_, "bold")) font->bold_ = true;
  if (ContainsIgnoreCase(font->name_, "italic") ||
      ContainsIgnoreCase(font->name_, "oblique")) {
    font->italic_ = true;
  }

  // Base encoding, then /Differences.
  const Object enc = doc.Get(font_dict, "Encoding");
  const std::string* enc_name = enc.AsName();
  const Dict* enc_dict = enc.AsDict();
  Object base_encoding;
  if (enc_dict != nullptr) {
    base_encoding = doc.Get(*enc_dict, "BaseEncoding");
    enc_name = base_encoding.AsName();
  }
  for (int c = 0; c < 256; ++c) {
    const auto code = static_cast<uint8_t>(c);
    if (enc_name != nullptr && *enc_name == "MacRomanEncoding") {
      font->encoding_[c] = MacRomanToUnicode(code);
    } else if (enc_name != nullptr && *enc_name == "StandardEncoding") {
      font->encoding_[c] = StandardToUnicode(code);
    } else {
      font->encoding_[c] = WinAnsiToUnicode(code);
    }
  }
  if (enc_dict != nullptr) {
    const Object diffs = doc.Get(*enc_dict, "Differences");
    if (const Array* da = diffs.AsArray()) {
      int code = 0;
      for (const Object& item : *da) {
        const Object v = doc.Resolve(item);
        if (auto n = v.AsInt()) {
          code = static_cast<int>(*n);
        } else if (const std::string* gname = v.AsName()) {
          if (code >= 0 && code < 256) {
            font->encoding_[code] = GlyphNameToUnicode(*gname);
          }
          ++code;
        }
      }
    }
  }

  const Object tu = doc.Get(font_dict, "ToUnicode");
  if (const Stream* s = tu.AsStream()) {
    if (auto data = doc.StreamData(*s); data.ok()) {
      font->to_unicode_ = ToUnicodeMap::Parse(*data);
    }
  }
  return font;
}

double Font::WidthOf(uint32_t code) const {
  if (two_byte_) {
    const auto it = cid_widths_.find(code);
    return (it == cid_widths_.end() ? default_width_ : it->second) *
           width_scale_;
  }
  const int idx = static_cast<int>(code) - first_char_;
  if (idx >= 0 && idx < static_cast<int>(widths_.size())) {
    return widths_[idx] * width_scale_;
  }
  return default_width_ * width_scale_;
}

std::vector<Glyph> Font::Decode(std::string_view bytes) const {
  std::vector<Glyph> out;
  const int step = two_byte_ ? 2 : 1;
  out.reserve(bytes.size() / step);
  for (size_t i = 0; i + step <= bytes.size(); i += step) {
    Glyph g;
    g.code = step == 2 ? BytesToCode(bytes.substr(i, 2))
                       : static_cast<unsigned char>(bytes[i]);
    g.width = WidthOf(g.code);
    g.word_space = step == 1 && g.code == 32;
    if (const std::string* mapped = to_unicode_.Lookup(g.code)) {
      g.text = *mapped;
    } else if (!two_byte_) {
      if (const char32_t cp = encoding_[g.code]) utf8::Append(cp, &g.text);
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace dla::pdf
