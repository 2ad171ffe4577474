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

// Content-stream interpreter. Tracks the graphics and text state needed to
// place glyph runs, image XObjects and stroked line art on the page.

#ifndef DLA_SRC_PDF_CONTENT_H_
#define DLA_SRC_PDF_CONTENT_H_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "dla/core/layout.h"
#include "dla/pdf/extract.h"
#include "src/pdf/document.h"
#include "src/pdf/font.h"

namespace dla::pdf {

struct Matrix {
  double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

  // this × other (apply this first).
  Matrix operator*(const Matrix& o) const {
    return {a * o.a + b * o.c,       a * o.b + b * o.d,
            c * o.a + d * o.c,       c * o.b + d * o.d,
            e * o.a + f * o.c + o.e, e * o.b + f * o.d + o.f};
  }
  Point Apply(Point p) const {
    return {p.x * a + p.y * c + e, p.x * b + p.y * d + f};
  }
  static Matrix Translate(double tx, double ty) { return {1, 0, 0, 1, tx, ty}; }
};

// Interprets page content and collects what it draws, in the top-left page
// frame.
class ContentInterpreter {
 public:
  ContentInterpreter(const Document& doc, const PageRecord& page);

  // Runs the page's content streams. Recoverable syntax problems are
  // reported as warnings; a non-OK status means the page content could not
  // be decoded at all.
  absl::Status Run();

  std::vector<TextSpan>& spans() { return spans_; }
  std::vector<BoundingBox>& images() { return images_; }
  std::vector<Segment>& segments() { return segments_; }
  std::vector<std::string>& warnings() { return warnings_; }

 private:
  struct TextState {
    std::shared_ptr<const Font> font;
    double size = 0.0;
    double char_spacing = 0.0;
    double word_spacing = 0.0;
    double horizontal_scale = 1.0;
    double leading = 0.0;
    double rise = 0.0;
  };
  struct GraphicsState {
    Matrix ctm;
    TextState text;
    double line_width = 1.0;
  };
  struct Subpath {
    std::vector<Point> points;  // User space (CTM applied).
    std::vector<bool> straight;  // straight[i]: edge points[i-1] -> points[i].
    bool closed = false;
  };

  void Execute(std::string_view content, const Dict& resources, int depth);
  void Operator(const std::string& op, std::vector<Object>& args,
                const Dict& resources, int depth);
  void ShowText(const std::string& bytes);
  void ShowTextArray(const Array& items);
  void Paint(bool stroke, bool fill);
  void DoXObject(const std::string& name, const Dict& resources, int depth);
  void SkipInlineImage(std::string_view content, size_t* pos);

  std::shared_ptr<const Font> LookupFont(const Dict& resources,
                                         const std::string& name);
  Point ToPage(Point user) const;
  BoundingBox UnitSquareBox() const;

  const Document& doc_;
  const PageRecord& page_;
  GraphicsState gs_;
  std::vector<GraphicsState> stack_;
  Matrix text_matrix_;
  Matrix line_matrix_;
  std::vector<Subpath> path_;
  std::map<std::string, std::shared_ptr<const Font>> font_cache_;
  std::set<int> active_forms_;
  int syntax_errors_ = 0;

  std::vector<TextSpan> spans_;
  std::vector<BoundingBox> images_;
  std::vector<Segment> segments_;
  std::vector<std::string> warnings_;
};

}  // namespace dla::pdf

#endif  // DLA_SRC_PDF_CONTENT_H_
