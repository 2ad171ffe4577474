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

#include "src/pdf/content.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"
#include "dla/core/utf8.h"
#include "src/pdf/lexer.h"

namespace dla::pdf {
namespace {

constexpr int kMaxFormDepth = 12;
constexpr int kMaxSyntaxErrors = 200;
// TJ displacements at least this large (in thousandths of an em) are word
// gaps and become a space in the extracted text.
constexpr double kTjSpaceThreshold = 200.0;
// Filled rectangles this thin are drawn rules rather than areas.
constexpr double kHairlineFill = 2.0;

double Num(const std::vector<Object>& args, size_t i) {
  return i < args.size() ? args[i].AsNumber().value_or(0.0) : 0.0;
}

bool IsWhitespaceText(std::string_view s) {
  size_t pos = 0;
  while (pos < s.size()) {
    const char32_t cp = utf8::DecodeNext(s, &pos);
    if (!utf8::IsSpace(cp) && cp != 0xFFFF) return false;
  }
  return true;
}

int QuantizeDirection(double dx, double dy) {
  double deg = std::atan2(dy, dx) * 180.0 / std::numbers::pi;
  if (deg < 0) deg += 360.0;
  return (static_cast<int>(std::lround(deg / 90.0)) % 4) * 90;
}

}  // namespace

ContentInterpreter::ContentInterpreter(const Document& doc,
                                       const PageRecord& page)
    : doc_(doc), page_(page) {}

Point ContentInterpreter::ToPage(Point user) const {
  return {user.x - page_.box[0], page_.box[3] - user.y};
}

BoundingBox ContentInterpreter::UnitSquareBox() const {
  const Point corners[4] = {
      ToPage(gs_.ctm.Apply({0, 0})), ToPage(gs_.ctm.Apply({1, 0})),
      ToPage(gs_.ctm.Apply({0, 1})), ToPage(gs_.ctm.Apply({1, 1}))};
  BoundingBox box = BoundingBox::FromCorners(corners[0], corners[1]);
  box = Union(box, BoundingBox::FromCorners(corners[2], corners[3]));
  return box;
}

absl::Status ContentInterpreter::Run() {
  const Object contents = doc_.Get(page_.dict, "Contents");
  std::vector<const Stream*> streams;
  Array resolved_items;
  if (const Stream* s = contents.AsStream()) {
    streams.push_back(s);
  } else if (const Array* a = contents.AsArray()) {
    for (const Object& item : *a) resolved_items.push_back(doc_.Resolve(item));
    for (const Object& item : resolved_items) {
      if (const Stream* s = item.AsStream()) streams.push_back(s);
    }
  }
  std::string content;
  for (const Stream* s : streams) {
    auto data = doc_.StreamData(*s);
    if (!data.ok()) return data.status();
    content += *data;
    content.push_back('\n');
  }
  Execute(content, page_.resources, 0);
  return absl::OkStatus();
}

std::shared_ptr<const Font> ContentInterpreter::LookupFont(
    const Dict& resources, const std::string& name) {
  const Object fonts = doc_.Get(resources, "Font");
  const Dict* font_dict = fonts.AsDict();
  const Object* entry = font_dict ? Find(*font_dict, name) : nullptr;
  if (entry == nullptr) {
    warnings_.push_back(absl::StrCat("font resource /", name, " missing"));
    return Font::Default();
  }
  const std::string key =
      entry->is_ref()
          ? absl::StrCat("R", entry->AsRef()->num)
          : absl::StrCat("N", name, "@",
                         reinterpret_cast<uintptr_t>(font_dict));
  if (const auto it = font_cache_.find(key); it != font_cache_.end()) {
    return it->second;
  }
  const Object resolved = doc_.Resolve(*entry);
  std::shared_ptr<const Font> font =
      resolved.AsDict() ? Font::Load(doc_, *resolved.AsDict()) : Font::Default();
  font_cache_.emplace(key, font);
  return font;
}

void ContentInterpreter::Execute(std::string_view content,
                                 const Dict& resources, int depth) {
  ObjectParser parser(content);
  Lexer& lexer = parser.lexer();
  std::vector<Object> args;
  while (true) {
    const size_t before = lexer.pos();
    auto tok = lexer.Next();
    if (!tok.ok()) {
      if (++syntax_errors_ > kMaxSyntaxErrors) {
        warnings_.push_back("too many content syntax errors; page truncated");
        return;
      }
      lexer.set_pos(std::max(lexer.pos(), before + 1));
      args.clear();
      continue;
    }
    if (tok->kind == Token::Kind::kEof) break;
    if (tok->kind == Token::Kind::kKeyword) {
      if (tok->text == "BI") {
        size_t pos = lexer.pos();
        SkipInlineImage(content, &pos);
        lexer.set_pos(pos);
        images_.push_back(UnitSquareBox());
      } else {
        Operator(tok->text, args, resources, depth);
      }
      args.clear();
      continue;
    }
    auto obj = parser.ParseObjectFrom(*tok);
    if (!obj.ok()) {
      ++syntax_errors_;
      lexer.set_pos(std::max(lexer.pos(), before + 1));
      continue;
    }
    args.push_back(*std::move(obj));
  }
}

void ContentInterpreter::SkipInlineImage(std::string_view content,
                                         size_t* pos) {
  // Skip the image dictionary up to the ID operator.
  Lexer lexer(content, *pos);
  while (true) {
    auto tok = lexer.Next();
    if (!tok.ok() || tok->kind == Token::Kind::kEof) {
      *pos = content.size();
      return;
    }
    if (tok->IsKeyword("ID")) break;
  }
  size_t i = lexer.pos() + 1;  // Single whitespace after ID.
  while (i + 1 < content.size()) {
    if (content[i] == 'E' && content[i + 1] == 'I' &&
        IsPdfWhitespace(content[i - 1]) &&
        (i + 2 >= content.size() || IsPdfWhitespace(content[i + 2]) ||
         IsPdfDelimiter(content[i + 2]))) {
      *pos = i + 2;
      return;
    }
    ++i;
  }
  *pos = content.size();
}

void ContentInterpreter::Operator(const std::string& op,
                                  std::vector<Object>& args,
                                  const Dict& resources, int depth) {
  TextState& ts = gs_.text;
  auto move_line = [&](double tx, double ty) {
    line_matrix_ = Matrix::Translate(tx, ty) * line_matrix_;
    text_matrix_ = line_matrix_;
  };
  auto arg_matrix = [&]() {
    return Matrix{Num(args, 0), Num(args, 1), Num(args, 2),
                  Num(args, 3), Num(args, 4), Num(args, 5)};
  };
  auto user = [&](double x, double y) { return gs_.ctm.Apply({x, y}); };

  switch (op.size() == 1 ? op[0] : 0) {
    case 'q':
      stack_.push_back(gs_);
      return;
    case 'Q':
      if (!stack_.empty()) {
        gs_ = stack_.back();
        stack_.pop_back();
      }
      return;
    case 'w':
      gs_.line_width = Num(args, 0);
      return;
    case 'm':
      path_.push_back(Subpath{{user(Num(args, 0), Num(args, 1))}, {false}});
      return;
    case 'l':
      if (path_.empty()) path_.push_back({});
      path_.back().points.push_back(user(Num(args, 0), Num(args, 1)));
      path_.back().straight.push_back(true);
      return;
    case 'c':
    case 'v':
    case 'y': {
      if (path_.empty()) path_.push_back({});
      const size_t n = args.size();
      if (n >= 2) {
        path_.back().points.push_back(user(Num(args, n - 2), Num(args, n - 1)));
        path_.back().straight.push_back(false);
      }
      return;
    }
    case 'h':
      if (!path_.empty()) path_.back().closed = true;
      return;
    case 'S':
      Paint(true, false);
      return;
    case 's':
      if (!path_.empty()) path_.back().closed = true;
      Paint(true, false);
      return;
    case 'f':
    case 'F':
      Paint(false, true);
      return;
    case 'B':
      Paint(true, true);
      return;
    case 'b':
      if (!path_.empty()) path_.back().closed = true;
      Paint(true, true);
      return;
    case 'n':
      path_.clear();
      return;
    case '\'':
      move_line(0, -ts.leading);
      if (!args.empty() && args[0].AsString()) ShowText(*args[0].AsString());
      return;
    case '"':
      ts.word_spacing = Num(args, 0);
      ts.char_spacing = Num(args, 1);
      move_line(0, -ts.leading);
      if (args.size() > 2 && args[2].AsString()) ShowText(*args[2].AsString());
      return;
    default:
      break;
  }

  if (op == "cm") {
    gs_.ctm = arg_matrix() * gs_.ctm;
  } else if (op == "re") {
    const double x = Num(args, 0), y = Num(args, 1);
    const double w = Num(args, 2), h = Num(args, 3);
    Subpath sp;
    sp.points = {user(x, y), user(x + w, y), user(x + w, y + h), user(x, y + h)};
    sp.straight = {false, true, true, true};
    sp.closed = true;
    path_.push_back(std::move(sp));
  } else if (op == "f*" || op == "B*" || op == "b*") {
    if (op == "b*" && !path_.empty()) path_.back().closed = true;
    Paint(op != "f*", true);
  } else if (op == "BT") {
    text_matrix_ = Matrix();
    line_matrix_ = Matrix();
  } else if (op == "Tf") {
    if (!args.empty() && args[0].AsName()) {
      ts.font = LookupFont(resources, *args[0].AsName());
    }
    ts.size = Num(args, 1);
  } else if (op == "Tc") {
    ts.char_spacing = Num(args, 0);
  } else if (op == "Tw") {
    ts.word_spacing = Num(args, 0);
  } else if (op == "Tz") {
    ts.horizontal_scale = Num(args, 0) / 100.0;
  } else if (op == "TL") {
    ts.leading = Num(args, 0);
  } else if (op == "Ts") {
    ts.rise = Num(args, 0);
  } else if (op == "Td") {
    move_line(Num(args, 0), Num(args, 1));
  } else if (op == "TD") {
    ts.leading = -Num(args, 1);
    move_line(Num(args, 0), Num(args, 1));
  } else if (op == "Tm") {
    line_matrix_ = arg_matrix();
    text_matrix_ = line_matrix_;
  } else if (op == "T*") {
    move_line(0, -ts.leading);
  } else if (op == "Tj") {
    if (!args.empty() && args[0].AsString()) ShowText(*args[0].AsString());
  } else if (op == "TJ") {
    if (!args.empty() && args[0].AsArray()) ShowTextArray(*args[0].AsArray());
  } else if (op == "Do") {
    if (!args.empty() && args[0].AsName()) {
      DoXObject(*args[0].AsName(), resources, depth);
    }
  }
}

void ContentInterpreter::ShowText(const std::string& bytes) {
  Array items;
  items.emplace_back(bytes);
  ShowTextArray(items);
}

void ContentInterpreter::ShowTextArray(const Array& items) {
  TextState& ts = gs_.text;
  if (!ts.font) ts.font = Font::Default();
  const Font& font = *ts.font;
  const double th = ts.horizontal_scale;

  struct Placed {
    std::string text;
    double start;
    double end;
  };
  std::vector<Placed> glyphs;
  double x = 0.0;
  bool pending_space = false;
  for (const Object& item : items) {
    if (const auto n = item.AsNumber()) {
      x -= *n / 1000.0 * ts.size * th;
      if (-*n >= kTjSpaceThreshold && !glyphs.empty()) pending_space = true;
      continue;
    }
    const std::string* bytes = item.AsString();
    if (bytes == nullptr) continue;
    for (const Glyph& g : font.Decode(*bytes)) {
      const double advance =
          (g.width * ts.size + ts.char_spacing +
           (g.word_space ? ts.word_spacing : 0.0)) *
          th;
      const bool ws = g.text.empty() || IsWhitespaceText(g.text);
      if (pending_space && !ws) {
        glyphs.push_back({" ", x, x});
      }
      pending_space = false;
      glyphs.push_back({g.text, x, x + g.width * ts.size * th});
      x += advance;
    }
  }
  const Matrix start_tm = text_matrix_;
  text_matrix_ = Matrix::Translate(x, 0) * text_matrix_;

  size_t first = 0, last = glyphs.size();
  while (first < last &&
         (glyphs[first].text.empty() || IsWhitespaceText(glyphs[first].text))) {
    ++first;
  }
  while (last > first && (glyphs[last - 1].text.empty() ||
                          IsWhitespaceText(glyphs[last - 1].text))) {
    --last;
  }
  if (first >= last) return;

  TextSpan span;
  for (size_t i = first; i < last; ++i) span.text += glyphs[i].text;
  const double s = glyphs[first].start;
  const double e = std::max(glyphs[last - 1].end, s);
  const Matrix m = start_tm * gs_.ctm;
  const double lo = ts.rise + font.descent() * ts.size;
  const double hi = ts.rise + font.ascent() * ts.size;
  const Point c0 = ToPage(m.Apply({s, lo}));
  const Point c1 = ToPage(m.Apply({s, hi}));
  const Point c2 = ToPage(m.Apply({e, lo}));
  const Point c3 = ToPage(m.Apply({e, hi}));
  span.bbox = Union(BoundingBox::FromCorners(c0, c1),
                    BoundingBox::FromCorners(c2, c3));
  span.font_name = font.name();
  span.bold = font.bold();
  span.italic = font.italic();
  span.font_size = std::abs(ts.size) * std::hypot(m.c, m.d);
  // Page y points down, so flip the user-space y component.
  span.direction = QuantizeDirection(m.a, -m.b);
  if (!(span.font_size > 0.0) || !span.bbox.IsValid()) return;
  spans_.push_back(std::move(span));
}

void ContentInterpreter::Paint(bool stroke, bool fill) {
  const double scale = std::sqrt(std::abs(gs_.ctm.a * gs_.ctm.d -
                                          gs_.ctm.b * gs_.ctm.c));
  for (const Subpath& sp : path_) {
    const auto& pts = sp.points;
    if (stroke) {
      for (size_t i = 1; i < pts.size(); ++i) {
        if (!sp.straight[i]) continue;
        segments_.push_back(
            {ToPage(pts[i - 1]), ToPage(pts[i]), gs_.line_width * scale});
      }
      if (sp.closed && pts.size() > 2 && !(pts.front() == pts.back())) {
        segments_.push_back(
            {ToPage(pts.back()), ToPage(pts.front()), gs_.line_width * scale});
      }
    } else if (fill && pts.size() >= 4 && pts.size() <= 5) {
      // Rules drawn as thin filled rectangles.
      const bool all_straight = std::all_of(
          sp.straight.begin() + 1, sp.straight.end(), [](bool b) { return b; });
      if (!all_straight) continue;
      BoundingBox box = BoundingBox::FromCorners(ToPage(pts[0]), ToPage(pts[2]));
      for (const Point& p : pts) {
        box = Union(box, BoundingBox::FromCorners(ToPage(p), ToPage(p)));
      }
      // Must be axis-aligned: every corner on the box boundary.
      bool axis_aligned = true;
      for (size_t i = 0; i < 4; ++i) {
        const Point p = ToPage(pts[i]);
        const bool on_x = std::abs(p.x - box.x0) < 1e-6 || std::abs(p.x - box.x1) < 1e-6;
        const bool on_y = std::abs(p.y - box.y0) < 1e-6 || std::abs(p.y - box.y1) < 1e-6;
        axis_aligned = axis_aligned && on_x && on_y;
      }
      if (!axis_aligned) continue;
      const double w = box.width(), h = box.height();
      if (h <= kHairlineFill && w > kHairlineFill) {
        const double y = (box.y0 + box.y1) / 2.0;
        segments_.push_back({{box.x0, y}, {box.x1, y}, h});
      } else if (w <= kHairlineFill && h > kHairlineFill) {
        const double x = (box.x0 + box.x1) / 2.0;
        segments_.push_back({{x, box.y0}, {x, box.y1}, w});
      }
    }
  }
  path_.clear();
}

void ContentInterpreter::DoXObject(const std::string& name,
                                   const Dict& resources, int depth) {
  const Object xobjects = doc_.Get(resources, "XObject");
  const Dict* dict = xobjects.AsDict();
  if (dict == nullptr) return;
  const Object* entry = Find(*dict, name);
  if (entry == nullptr) return;
  const Object xobj = doc_.Resolve(*entry);
  const Stream* stream = xobj.AsStream();
  if (stream == nullptr) return;
  const Object subtype = doc_.Get(stream->dict, "Subtype");
  if (subtype.is_name("Image")) {
    images_.push_back(UnitSquareBox());
    return;
  }
  if (!subtype.is_name("Form") || depth >= kMaxFormDepth) return;
  const int key = entry->is_ref() ? entry->AsRef()->num : -1;
  if (key >= 0 && !active_forms_.insert(key).second) return;  // Cycle.

  auto data = doc_.StreamData(*stream);
  if (!data.ok()) {
    warnings_.push_back(absl::StrCat("form /", name, ": ",
                                     data.status().message()));
  } else {
    const GraphicsState saved = gs_;
    const std::vector<GraphicsState> saved_stack = stack_;
    const Matrix saved_tm = text_matrix_, saved_lm = line_matrix_;
    Matrix form_matrix;
    if (const Array* m = doc_.Get(stream->dict, "Matrix").AsArray();
        m != nullptr && m->size() == 6) {
      double v[6];
      for (int k = 0; k < 6; ++k) {
        v[k] = doc_.Resolve((*m)[k]).AsNumber().value_or(k == 0 || k == 3);
      }
      form_matrix = {v[0], v[1], v[2], v[3], v[4], v[5]};
    }
    gs_.ctm = form_matrix * gs_.ctm;
    const Object form_resources = doc_.Get(stream->dict, "Resources");
    const Dict* res = form_resources.AsDict();
    Execute(*data, res != nullptr ? *res : resources, depth + 1);
    gs_ = saved;
    stack_ = saved_stack;
    text_matrix_ = saved_tm;
    line_matrix_ = saved_lm;
  }
  if (key >= 0) active_forms_.erase(key);
}

}  // namespace dla::pdf
