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

#include "dla/eval/synth.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/time/civil_time.h"
#include "dla/core/strings.h"
#include "dla/eval/pdf_writer.h"
#include "dla/labeler/forest.h"

namespace dla::eval {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kMargin = 56.0;
constexpr double kContentTop = 78.0;
constexpr double kContentBottom = 790.0;
constexpr double kBlockSpacing = 12.0;
constexpr double kRowHeight = 14.0;
constexpr double kRotatedRowHeight = 16.0;
constexpr double kCellPad = 4.0;

constexpr const char* kWords[] = {
    "administración", "anuncio",     "ayuntamiento", "bases",
    "boletín",        "concurso",    "contrato",     "convocatoria",
    "dirección",      "disposición", "expediente",   "general",
    "licitación",     "municipal",   "normativa",    "oficial",
    "plazo",          "presupuesto", "procedimiento", "provincia",
    "público",        "registro",    "reglamento",   "servicio",
    "solicitud",      "subvención",  "tasa",         "trámite",
    "urbanismo",      "vecinos",     "de",           "la",
    "el",             "los",         "las",          "en",
    "por",            "para",        "con",          "que",
    "se",             "del",         "al",           "su",
    "y",              "o",           "a",            "según",
    "artículo",       "ley",         "orden",        "real",
    "decreto",        "resolución",  "acuerdo",      "pleno",
    "consejería",     "economía",    "hacienda",     "empleo",
    "educación",      "sanidad",     "cultura",      "medio",
    "ambiente",       "agricultura", "obras",        "vivienda",
    "información",    "alegaciones", "días",         "hábiles",
    "desde",          "siguiente",   "publicación",  "presente",
    "edicto",         "aprobación",  "inicial",      "definitiva",
    "modificación",   "crédito",     "ordenanza",    "fiscal",
    "Estado",         "Comunidad",   "Junta",        "Gobierno",
    "Diputación",     "Consejo",     "Secretaría",   "Tribunal",
};

constexpr const char* kTitleLeads[] = {"RESOLUCIÓN", "ORDEN",   "ANUNCIO",
                                       "DECRETO",    "ACUERDO", "EDICTO"};

constexpr const char* kMonths[] = {
    "enero", "febrero", "marzo",      "abril",   "mayo",      "junio",
    "julio", "agosto",  "septiembre", "octubre", "noviembre", "diciembre"};

constexpr const char* kWeekdays[] = {"Lunes",  "Martes", "Miércoles",
                                     "Jueves", "Viernes", "Sábado",
                                     "Domingo"};

constexpr const char* kPlaces[] = {
    "Madrid", "Sevilla", "Lugo", "Soria", "Teruel", "Cuenca", "Huesca",
    "León",   "Jaén",    "Ávila", "Toledo", "Burgos", "Zamora", "Cádiz"};

double Round2(double v) { return std::round(v * 100.0) / 100.0; }

class Random {
 public:
  explicit Random(uint64_t seed) : rng_(seed) {}

  double Uniform(double lo, double hi) { return lo + (hi - lo) * rng_.Uniform(); }
  int Int(int lo, int hi) {
    return lo + static_cast<int>(rng_.Below(static_cast<uint64_t>(hi - lo + 1)));
  }
  bool Chance(double p) { return p > 0.0 && rng_.Uniform() < p; }
  template <typename T, size_t N>
  const T& Pick(const T (&items)[N]) {
    return items[rng_.Below(N)];
  }

 private:
  labeler::SplitMix64 rng_;
};

uint64_t HashName(std::string_view s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::string> Wrap(const std::vector<std::string>& words,
                              double size, double width) {
  std::vector<std::string> lines;
  std::string current;
  for (const std::string& w : words) {
    std::string candidate = current.empty() ? w : absl::StrCat(current, " ", w);
    if (!current.empty() &&
        TextWidth(candidate, size, DefaultWidths()) > width) {
      lines.push_back(current);
      current = w;
    } else {
      current = std::move(candidate);
    }
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

struct Placement {
  int page = 0;
  int column = 0;
  double x = 0.0;
  double top = 0.0;
};

class DocBuilder {
 public:
  DocBuilder(const SynthTemplate& t, int index, const GenerateOptions& options)
      : t_(t),
        index_(index),
        rng_(options.seed ^ HashName(t.source_id) ^
             (0x9E3779B97F4A7C15ULL * static_cast<uint64_t>(index + 1))) {
    const int year = options.year.value_or(rng_.Int(2014, 2023));
    date_ = absl::CivilDay(year, rng_.Int(1, 12), rng_.Int(1, 28));
    n_pages_ = rng_.Int(t.min_pages, t.max_pages);
    column_width_ =
        (t.page_width - 2 * kMargin - (t.columns - 1) * t.gutter) / t.columns;
    manifest_.source_id = t.source_id;
    manifest_.file_name = absl::StrFormat("%s-%03d.pdf", t.source_id, index);
    manifest_.creation_date = absl::FormatCivilTime(date_);
    manifest_.page_width = t.page_width;
    manifest_.page_height = t.page_height;
    manifest_.reconstruct_words = t.word_per_show;
  }

  SynthDocument Build() {
    NewPage();
    while (!done_) {
      if (rng_.Chance(t_.table_probability)) {
        AddTables();
      } else if (rng_.Chance(t_.image_probability)) {
        AddImage();
      } else {
        AddAnnouncement();
      }
    }
    PdfWriter writer;
    for (const std::string& name : font_order_) {
      FontSpec spec;
      spec.base_font = name;
      spec.with_descriptor = t_.custom_fonts && name.starts_with("Gaz");
      spec.force_bold = spec.with_descriptor && name.ends_with("Heavy");
      spec.italic = spec.with_descriptor && name.ends_with("Slanted");
      writer.AddFont(spec);
    }
    if (uses_image_) writer.AddImage();
    for (size_t p = 0; p < pages_.size(); ++p) {
      writer.AddPage(t_.page_width, t_.page_height, pages_[p], links_[p]);
    }
    SynthDocument doc;
    manifest_.page_count = static_cast<int>(pages_.size());
    doc.manifest = std::move(manifest_);
    doc.pdf = writer.Finish(absl::StrFormat(
        "D:%04d%02d%02d120000", date_.year(), date_.month(), date_.day()));
    return doc;
  }

 private:
  std::string FontResource(const std::string& name) {
    auto it = font_names_.find(name);
    if (it != font_names_.end()) return it->second;
    const std::string res = absl::StrCat("F", font_order_.size());
    font_order_.push_back(name);
    font_names_[name] = res;
    return res;
  }

  std::string& Content() { return pages_.back(); }
  int PageIndex() const { return static_cast<int>(pages_.size()) - 1; }

  double PdfY(double top_y) const { return t_.page_height - top_y; }

  // One text line with its baseline at `baseline` (top-left frame).
  void EmitLine(const TextStyle& style, double x, double baseline,
                const std::string& text) {
    const std::string res = FontResource(style.font);
    std::string& c = Content();
    absl::StrAppend(&c, "BT /", res, " ", Num(style.size), " Tf\n");
    if (!t_.word_per_show) {
      absl::StrAppend(&c, "1 0 0 1 ", Num(x), " ", Num(PdfY(baseline)),
                      " Tm ", PdfString(ToWinAnsi(text)), " Tj\n");
    } else {
      double cx = x;
      for (absl::string_view w : absl::StrSplit(text, ' ')) {
        const std::string word(w);
        absl::StrAppend(&c, "1 0 0 1 ", Num(cx), " ", Num(PdfY(baseline)),
                        " Tm ", PdfString(ToWinAnsi(word)), " Tj\n");
        cx += TextWidth(absl::StrCat(word, " "), style.size, DefaultWidths());
      }
    }
    c += "ET\n";
  }

  // A horizontal or vertical rule between two top-frame points.
  void EmitRule(Point a, Point b) {
    std::string& c = Content();
    if (!t_.filled_rules) {
      absl::StrAppend(&c, "0.5 w ", Num(a.x), " ", Num(PdfY(a.y)), " m ",
                      Num(b.x), " ", Num(PdfY(b.y)), " l S\n");
      return;
    }
    if (a.y == b.y) {
      absl::StrAppend(&c, Num(a.x), " ", Num(PdfY(a.y) - 0.25), " ",
                      Num(b.x - a.x), " 0.5 re f\n");
    } else {
      absl::StrAppend(&c, Num(a.x - 0.25), " ", Num(PdfY(b.y)), " 0.5 ",
                      Num(b.y - a.y), " re f\n");
    }
  }

  // Lays out `lines` as one block; returns the block bbox.
  BoundingBox EmitBlock(const TextStyle& style, double x, double top,
                        const std::vector<std::string>& lines) {
    double width = 0.0;
    for (size_t i = 0; i < lines.size(); ++i) {
      const double baseline = top + 0.8 * style.size + i * 1.2 * style.size;
      EmitLine(style, x, baseline, lines[i]);
      width = std::max(width, TextWidth(lines[i], style.size, DefaultWidths()));
    }
    return {x, top, x + width, top + BlockHeight(style, lines.size())};
  }

  static double BlockHeight(const TextStyle& style, size_t n_lines) {
    return style.size + (n_lines - 1) * 1.2 * style.size;
  }

  bool NewPage() {
    if (static_cast<int>(pages_.size()) >= n_pages_) {
      done_ = true;
      return false;
    }
    pages_.emplace_back();
    links_.emplace_back();
    column_ = 0;
    cursor_ = kContentTop;
    AddMasthead();
    if (PageIndex() == 0) AddLogo();
    if (t_.rotated_table_probability > 0 &&
        static_cast<int>(pages_.size()) < n_pages_ && PageIndex() > 0 &&
        rng_.Chance(t_.rotated_table_probability)) {
      AddRotatedTable();
      return NewPage();
    }
    return true;
  }

  void AddMasthead() {
    const TextStyle& s = t_.masthead;
    const int weekday = static_cast<int>(absl::GetWeekday(date_));
    const std::string line1 = t_.name;
    const std::string line2 = absl::StrCat(
        "Núm. ", 40 + index_, " · ", kWeekdays[weekday], ", ", date_.day(),
        " de ", kMonths[date_.month() - 1], " de ", date_.year(), " · Pág. ",
        PageIndex() + 1);
    const double x = kMargin;
    const double top = 32.8;
    EmitLine(s, x, top + 0.8 * s.size, line1);
    EmitLine(s, x, top + 0.8 * s.size + 11.0, line2);
    const double width =
        std::max(TextWidth(line1, s.size, DefaultWidths()),
                 TextWidth(line2, s.size, DefaultWidths()));
    SynthBlock b;
    b.page = PageIndex();
    b.kind = BlockKind::kText;
    b.label = LayoutLabel::kIdentifier;
    b.bbox = {x, top, x + width, top + s.size + 11.0};
    b.text = absl::StrCat(line1, " ", line2);
    manifest_.blocks.push_back(std::move(b));
    EmitRule({kMargin, 62.0}, {t_.page_width - kMargin, 62.0});
  }

  void AddLogo() {
    uses_image_ = true;
    const BoundingBox r{t_.page_width - kMargin - 70.0, 26.0,
                        t_.page_width - kMargin, 56.0};
    absl::StrAppend(&Content(), "q ", Num(r.width()), " 0 0 ",
                    Num(r.height()), " ", Num(r.x0), " ", Num(PdfY(r.y1)),
                    " cm /Im0 Do Q\n");
    const std::string uri =
        absl::StrCat("https://", t_.source_id, ".example.org/doc/", index_);
    links_.back().push_back({r, uri});
    SynthBlock img;
    img.page = PageIndex();
    img.kind = BlockKind::kImage;
    img.label = LayoutLabel::kImage;
    img.bbox = r;
    manifest_.blocks.push_back(img);
    SynthBlock link = img;
    link.kind = BlockKind::kLink;
    link.label = LayoutLabel::kLink;
    link.text = uri;
    manifest_.blocks.push_back(std::move(link));
  }

  // Reserves `height` points in the column flow, moving to the next column
  // or page as needed. Returns false when the document is full.
  bool Place(double height, Placement* out) {
    if (cursor_ + height > kContentBottom) {
      ++column_;
      cursor_ = kContentTop;
      if (column_ >= t_.columns && !NewPage()) return false;
    }
    if (done_) return false;
    out->page = PageIndex();
    out->column = column_;
    out->x = kMargin + column_ * (column_width_ + t_.gutter);
    out->top = cursor_;
    cursor_ += height + kBlockSpacing;
    return true;
  }

  int ColumnTag(const Placement& p) const {
    return t_.columns > 1 ? p.column : -1;
  }

  std::vector<std::string> RandomWords(int n) {
    std::vector<std::string> words;
    for (int i = 0; i < n; ++i) words.emplace_back(rng_.Pick(kWords));
    return words;
  }

  void AddTextBlock(LayoutLabel label, TextStyle style,
                    std::vector<std::string> words) {
    bool violation = false;
    if (rng_.Chance(t_.style_violation_probability)) {
      violation = true;
      switch (label) {
        case LayoutLabel::kTitle:
          style.font = t_.title_plain.font;
          break;
        case LayoutLabel::kSummary:
          style.font = t_.summary_plain.font;
          break;
        default:
          style.font = rng_.Chance(0.5) ? t_.body_bold.font
                                        : t_.body_italic.font;
          break;
      }
    }
    if (t_.size_jitter > 0) {
      style.size =
          Round2(style.size + rng_.Uniform(-t_.size_jitter, t_.size_jitter));
    }
    const std::vector<std::string> lines =
        Wrap(words, style.size, column_width_ - 2.0);
    const double height = BlockHeight(style, lines.size());
    Placement p;
    if (!Place(height + t_.position_jitter, &p)) return;
    double x = p.x;
    double top = p.top;
    if (t_.position_jitter > 0) {
      x = Round2(x + rng_.Uniform(0.0, t_.position_jitter));
      top = Round2(top + rng_.Uniform(0.0, t_.position_jitter));
    }
    SynthBlock b;
    b.page = p.page;
    b.kind = BlockKind::kText;
    b.label = label;
    b.bbox = EmitBlock(style, x, top, lines);
    b.text = absl::StrJoin(lines, " ");
    b.column = ColumnTag(p);
    b.style_violation = violation;
    manifest_.blocks.push_back(std::move(b));
  }

  void AddAnnouncement() {
    std::vector<std::string> title = {
        rng_.Pick(kTitleLeads), "de", absl::StrCat(rng_.Int(1, 28)), "de",
        absl::StrCat(rng_.Pick(kMonths), ",")};
    for (const std::string& w : RandomWords(rng_.Int(5, 14))) title.push_back(w);
    AddTextBlock(LayoutLabel::kTitle, t_.title, title);
    if (done_) return;
    if (rng_.Chance(t_.summary_probability)) {
      AddTextBlock(LayoutLabel::kSummary, t_.summary,
                   RandomWords(rng_.Int(8, 30)));
      if (done_) return;
    }
    const int paragraphs = rng_.Int(1, 3);
    for (int i = 0; i < paragraphs && !done_; ++i) {
      std::vector<std::string> words = RandomWords(rng_.Int(15, 70));
      char& first = words.front()[0];
      if (first >= 'a' && first <= 'z') first = static_cast<char>(first - 32);
      words.back() += ".";
      AddTextBlock(LayoutLabel::kBody, t_.body, std::move(words));
    }
  }

  std::string CellText(double max_width) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      std::string text;
      switch (rng_.Int(0, 3)) {
        case 0:
          text = absl::StrCat(rng_.Int(1, 9999));
          break;
        case 1:
          text = absl::StrFormat("%d,%02d", rng_.Int(1, 999), rng_.Int(0, 99));
          break;
        case 2:
          text = rng_.Pick(kPlaces);
          break;
        default:
          text = absl::StrCat("Lote ", rng_.Int(1, 40));
          break;
      }
      if (TextWidth(text, t_.cell.size, DefaultWidths()) <= max_width) {
        return text;
      }
    }
    return absl::StrCat(rng_.Int(1, 9));
  }

  std::vector<double> ColumnWidths(int n, double lo, double hi, double limit) {
    std::vector<double> widths;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const double w = std::round(rng_.Uniform(lo, hi));
      if (total + w > limit) break;
      widths.push_back(w);
      total += w;
    }
    return widths;
  }

  void AddTables() {
    const int count = rng_.Chance(t_.double_table_probability) ? 2 : 1;
    for (int i = 0; i < count && !done_; ++i) AddTable();
  }

  void AddTable() {
    const int rows = rng_.Int(2, 6);
    std::vector<double> widths =
        ColumnWidths(rng_.Int(2, 5), 70.0, 110.0, column_width_);
    if (widths.size() < 2) widths = {70.0, 70.0};
    const int cols = static_cast<int>(widths.size());
    const double height = rows * kRowHeight;
    Placement p;
    if (!Place(height, &p)) return;
    const double x0 = p.x;
    const double y0 = p.top;
    std::vector<double> xs = {x0};
    for (double w : widths) xs.push_back(xs.back() + w);
    const double x1 = xs.back();
    const double y1 = y0 + height;
    for (int r = 0; r <= rows; ++r) {
      EmitRule({x0, y0 + r * kRowHeight}, {x1, y0 + r * kRowHeight});
    }
    for (double x : xs) EmitRule({x, y0}, {x, y1});
    SynthBlock b;
    b.page = p.page;
    b.kind = BlockKind::kTable;
    b.label = LayoutLabel::kTable;
    b.bbox = {x0, y0, x1, y1};
    b.column = ColumnTag(p);
    b.cells.assign(rows, std::vector<std::string>(cols));
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const std::string text = CellText(widths[c] / 2.0);
        EmitLine(t_.cell, xs[c] + kCellPad, y0 + r * kRowHeight + 10.0, text);
        b.cells[r][c] = text;
      }
    }
    manifest_.blocks.push_back(std::move(b));
    // Extra room so stacked tables never touch.
    cursor_ += 8.0;
  }

  void AddImage() {
    const double w = std::round(rng_.Uniform(120.0, std::min(200.0, column_width_)));
    const double h = std::round(rng_.Uniform(60.0, 120.0));
    Placement p;
    if (!Place(h, &p)) return;
    uses_image_ = true;
    const BoundingBox r{p.x, p.top, p.x + w, p.top + h};
    absl::StrAppend(&Content(), "q ", Num(w), " 0 0 ", Num(h), " ", Num(r.x0),
                    " ", Num(PdfY(r.y1)), " cm /Im0 Do Q\n");
    SynthBlock b;
    b.page = p.page;
    b.kind = BlockKind::kImage;
    b.label = LayoutLabel::kImage;
    b.bbox = r;
    b.column = ColumnTag(p);
    manifest_.blocks.push_back(std::move(b));
  }

  // Fills the current page with a table whose text runs along the page's
  // vertical axis. Logical (u, v) maps to the page as
  //   90:  (X1 - v, Y0 + u)
  //   270: (X0 + v, Y1 - u)
  void AddRotatedTable() {
    const int rotation = rng_.Chance(0.5) ? 90 : 270;
    const int rows = rng_.Int(3, 8);
    std::vector<double> widths = ColumnWidths(rng_.Int(4, 6), 90.0, 120.0,
                                              kContentBottom - kContentTop - 20);
    const int cols = static_cast<int>(widths.size());
    const double logical_h = rows * kRotatedRowHeight;
    std::vector<double> us = {0.0};
    for (double w : widths) us.push_back(us.back() + w);
    const double logical_w = us.back();
    const double X0 = kMargin;
    const double Y0 = kContentTop + 10.0;
    const double X1 = X0 + logical_h;
    const double Y1 = Y0 + logical_w;
    for (int r = 0; r <= rows; ++r) {
      const double x = X0 + r * kRotatedRowHeight;
      EmitRule({x, Y0}, {x, Y1});
    }
    for (double u : us) {
      const double y = rotation == 90 ? Y0 + u : Y1 - u;
      EmitRule({X0, y}, {X1, y});
    }
    SynthBlock b;
    b.page = PageIndex();
    b.kind = BlockKind::kTable;
    b.label = LayoutLabel::kTable;
    b.bbox = {X0, Y0, X1, Y1};
    b.rotation = rotation;
    b.cells.assign(rows, std::vector<std::string>(cols));
    const std::string res = FontResource(t_.cell.font);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const std::string text = CellText(widths[c] / 2.0);
        const double u = us[c] + kCellPad;
        const double v = r * kRotatedRowHeight + 11.0;
        Point page = rotation == 90 ? Point{X1 - v, Y0 + u}
                                    : Point{X0 + v, Y1 - u};
        const std::string matrix =
            rotation == 90 ? "0 -1 1 0 " : "0 1 -1 0 ";
        absl::StrAppend(&Content(), "BT /", res, " ", Num(t_.cell.size),
                        " Tf ", matrix, Num(page.x), " ", Num(PdfY(page.y)),
                        " Tm ", PdfString(ToWinAnsi(text)), " Tj ET\n");
        b.cells[r][c] = text;
      }
    }
    manifest_.blocks.push_back(std::move(b));
  }

  const SynthTemplate& t_;
  int index_;
  Random rng_;
  absl::CivilDay date_;
  int n_pages_ = 1;
  double column_width_ = 0.0;
  SynthManifest manifest_;
  std::vector<std::string> pages_;
  std::vector<std::vector<LinkSpec>> links_;
  std::map<std::string, std::string> font_names_;
  std::vector<std::string> font_order_;
  bool uses_image_ = false;
  bool done_ = false;
  int column_ = 0;
  double cursor_ = kContentTop;
};

json BoxToJson(const BoundingBox& b) { return json::array({b.x0, b.y0, b.x1, b.y1}); }

}  // namespace

SynthTemplate CleanTemplate() {
  SynthTemplate t;
  t.source_id = "synth-clean";
  t.name = "BOLETÍN OFICIAL DE LA PROVINCIA DE ÁVILA";
  return t;
}

SynthTemplate TwoColumnTemplate() {
  SynthTemplate t;
  t.source_id = "synth-twocol";
  t.name = "DIARIO OFICIAL DE LA REGIÓN";
  t.columns = 2;
  t.masthead = {"GazSans", 9.0};
  t.title = {"GazSans-Heavy", 12.0};
  t.summary = {"GazSerif-Slanted", 10.5};
  t.body = {"GazSerif", 9.5};
  t.cell = {"Courier", 7.5};
  t.title_plain = {"GazSans", 12.0};
  t.summary_plain = {"GazSerif", 10.5};
  t.body_bold = {"GazSans-Heavy", 9.5};
  t.body_italic = {"GazSerif-Slanted", 9.5};
  t.custom_fonts = true;
  t.filled_rules = true;
  t.table_probability = 0.1;
  t.rotated_table_probability = 0.2;
  return t;
}

SynthTemplate HardTemplate() {
  SynthTemplate t;
  t.source_id = "synth-hard";
  t.name = "BOLETÍN OFICIAL DEL ESTADO";
  t.position_jitter = 1.0;
  t.size_jitter = 0.3;
  t.style_violation_probability = 0.1;
  t.double_table_probability = 0.4;
  t.word_per_show = true;
  return t;
}

std::vector<SynthTemplate> DefaultTemplates() {
  return {CleanTemplate(), TwoColumnTemplate(), HardTemplate()};
}

corpus::SourceProfile TemplateProfile(const SynthTemplate& t) {
  corpus::SourceProfile p;
  p.source_id = t.source_id;
  p.name = t.name;
  p.languages = {"es"};
  p.reconstruct_words = t.word_per_show;
  return p;
}

std::string StarterRules(const SynthTemplate& t) {
  std::string rules = absl::StrCat(
      "# Starter rules for ", t.source_id,
      ".\n# Mastheads carry the weekday of the issue.\n"
      "IF f12 CONTAINS_ANY [lunes, martes, miércoles, jueves, viernes, "
      "sábado, domingo] THEN Identifier\n");
  if (t.custom_fonts) rules += "IF f16 CONTAINS_ANY [Heavy] THEN Title\n";
  rules +=
      "IF f13 > 0.5 THEN Title\n"
      "IF f14 > 0.5 THEN Summary\n"
      "DEFAULT Body\n";
  return rules;
}

int SynthManifest::TokenCount() const {
  int total = 0;
  for (const SynthBlock& b : blocks) {
    if (b.kind != BlockKind::kText) continue;
    for (absl::string_view tok : absl::StrSplit(b.text, ' ', absl::SkipEmpty())) {
      (void)tok;
      ++total;
    }
  }
  return total;
}

SynthDocument GenerateDocument(const SynthTemplate& t, int index,
                               const GenerateOptions& options) {
  return DocBuilder(t, index, options).Build();
}

json ManifestToJson(const SynthManifest& m) {
  json blocks = json::array();
  for (const SynthBlock& b : m.blocks) {
    json jb = {{"page", b.page},
               {"B", Code(b.kind)},
               {"L", Code(b.label)},
               {"bbox", BoxToJson(b.bbox)}};
    if (!b.text.empty()) jb["text"] = b.text;
    if (b.column >= 0) jb["column"] = b.column;
    if (b.style_violation) jb["style_violation"] = true;
    if (b.kind == BlockKind::kTable) {
      jb["cells"] = b.cells;
      jb["rotation"] = b.rotation;
    }
    blocks.push_back(std::move(jb));
  }
  return {{"source_id", m.source_id},
          {"file_name", m.file_name},
          {"creation_date", m.creation_date},
          {"page_count", m.page_count},
          {"page_width", m.page_width},
          {"page_height", m.page_height},
          {"reconstruct_words", m.reconstruct_words},
          {"blocks", std::move(blocks)}};
}

absl::StatusOr<SynthManifest> ManifestFromJson(const json& j) {
  try {
    SynthManifest m;
    m.source_id = j.at("source_id").get<std::string>();
    m.file_name = j.at("file_name").get<std::string>();
    m.creation_date = j.at("creation_date").get<std::string>();
    m.page_count = j.at("page_count").get<int>();
    m.page_width = j.at("page_width").get<double>();
    m.page_height = j.at("page_height").get<double>();
    m.reconstruct_words = j.value("reconstruct_words", false);
    for (const json& jb : j.at("blocks")) {
      SynthBlock b;
      b.page = jb.at("page").get<int>();
      auto kind = BlockKindFromCode(jb.at("B").get<int>());
      auto label = LayoutLabelFromCode(jb.at("L").get<int>());
      if (!kind.ok()) return kind.status();
      if (!label.ok()) return label.status();
      b.kind = *kind;
      b.label = *label;
      const json& box = jb.at("bbox");
      b.bbox = {box.at(0).get<double>(), box.at(1).get<double>(),
                box.at(2).get<double>(), box.at(3).get<double>()};
      b.text = jb.value("text", "");
      b.column = jb.value("column", -1);
      b.style_violation = jb.value("style_violation", false);
      if (jb.contains("cells")) {
        b.cells = jb.at("cells").get<std::vector<std::vector<std::string>>>();
        b.rotation = jb.value("rotation", 0);
      }
      m.blocks.push_back(std::move(b));
    }
    return m;
  } catch (const json::exception& e) {
    return absl::DataLossError(absl::StrCat("bad manifest: ", e.what()));
  }
}

absl::Status WriteSyntheticCorpus(const std::vector<SynthTemplate>& templates,
                                  int docs_per_source, uint64_t seed,
                                  const fs::path& out) {
  GenerateOptions options;
  options.seed = seed;
  for (const SynthTemplate& t : templates) {
    const fs::path dir = out / t.source_id;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
      return absl::InternalError(
          absl::StrCat("cannot create ", dir.string(), ": ", ec.message()));
    }
    std::ofstream profile(dir / "profile.toml", std::ios::binary);
    profile << corpus::SerializeProfile(TemplateProfile(t));
    std::ofstream rules(dir / "rules.txt", std::ios::binary);
    rules << StarterRules(t);
    if (!profile || !rules) {
      return absl::InternalError(
          absl::StrCat("write failed under ", dir.string()));
    }
    for (int i = 0; i < docs_per_source; ++i) {
      const SynthDocument doc = GenerateDocument(t, i, options);
      const fs::path pdf_path = dir / doc.manifest.file_name;
      std::ofstream pdf(pdf_path, std::ios::binary);
      pdf << doc.pdf;
      fs::path json_path = pdf_path;
      json_path.replace_extension(".json");
      std::ofstream js(json_path, std::ios::binary);
      js << ManifestToJson(doc.manifest).dump(1) << "\n";
      if (!pdf || !js) {
        return absl::InternalError(
            absl::StrCat("write failed under ", dir.string()));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<SynthManifest>> LoadManifests(const fs::path& dir) {
  std::vector<SynthManifest> out;
  std::error_code ec;
  for (fs::recursive_directory_iterator it(dir, ec), end; !ec && it != end;
       it.increment(ec)) {
    if (!it->is_regular_file() || it->path().extension() != ".json") continue;
    std::ifstream in(it->path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    json j = json::parse(ss.str(), nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("blocks")) continue;
    auto m = ManifestFromJson(j);
    if (!m.ok()) return m.status();
    out.push_back(*std::move(m));
  }
  if (ec) {
    return absl::NotFoundError(
        absl::StrCat("cannot read ", dir.string(), ": ", ec.message()));
  }
  std::sort(out.begin(), out.end(),
            [](const SynthManifest& a, const SynthManifest& b) {
              return a.file_name < b.file_name;
            });
  return out;
}

}  // namespace dla::eval
