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

#include "dla/pdf/text_blocks.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dla/core/utf8.h"

namespace dla::pdf {
namespace {

constexpr char32_t kFffe = 0xFFFF;
constexpr double kJoinGapEm = 0.15;

bool IsBlank(char32_t cp) { return cp == kFffe || utf8::IsSpace(cp); }

bool EndsWithBlank(std::string_view s) {
  if (s.empty()) return false;
  const std::u32string cps = utf8::Decode(s);
  return IsBlank(cps.back());
}

bool StartsWithBlank(std::string_view s) {
  if (s.empty()) return false;
  size_t pos = 0;
  return IsBlank(utf8::DecodeNext(s, &pos));
}

double VerticalOverlap(const BoundingBox& a, const BoundingBox& b) {
  return std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
}

double HorizontalOverlap(const BoundingBox& a, const BoundingBox& b) {
  return std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
}

double Median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

std::string PreprocessText(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  size_t pos = 0;
  while (pos < raw.size()) {
    const char32_t cp = utf8::DecodeNext(raw, &pos);
    if (IsBlank(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    utf8::Append(cp, &out);
  }
  return out;
}

std::vector<TextSpan> ReconstructSpacelessText(
    std::span<const TextSpan> words) {
  std::map<int, std::vector<const TextSpan*>> by_line;
  for (const TextSpan& w : words) by_line[w.line_id].push_back(&w);
  std::vector<TextSpan> out;
  for (auto& [line, members] : by_line) {
    std::stable_sort(members.begin(), members.end(),
                     [](const TextSpan* a, const TextSpan* b) {
                       if (a->bbox.x0 != b->bbox.x0) {
                         return a->bbox.x0 < b->bbox.x0;
                       }
                       return a->text < b->text;
                     });
    TextSpan span = *members.front();
    span.text.clear();
    for (const TextSpan* w : members) {
      const std::string word = PreprocessText(w->text);
      if (word.empty()) continue;
      if (!span.text.empty()) span.text.push_back(' ');
      span.text += word;
      span.bbox = Union(span.bbox, w->bbox);
    }
    if (!span.text.empty()) out.push_back(std::move(span));
  }
  return out;
}

void AssignLineIds(std::vector<TextSpan>* spans, double max_gap_em) {
  struct Line {
    std::vector<size_t> members;
    BoundingBox bbox;
    int direction;
  };
  std::vector<size_t> order(spans->size());
  std::iota(order.begin(), order.end(), 0);
  // Sweep left to right so each span can only extend a line at its end.
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const TextSpan& sa = (*spans)[a];
    const TextSpan& sb = (*spans)[b];
    if (sa.bbox.x0 != sb.bbox.x0) return sa.bbox.x0 < sb.bbox.x0;
    return sa.bbox.y0 < sb.bbox.y0;
  });
  std::vector<Line> lines;
  for (size_t idx : order) {
    const TextSpan& s = (*spans)[idx];
    int best = -1;
    double best_overlap = 0.0;
    if (s.direction == 0) {
      for (size_t li = 0; li < lines.size(); ++li) {
        const Line& line = lines[li];
        if (line.direction != 0) continue;
        const TextSpan& last = (*spans)[line.members.back()];
        const double min_h = std::min(s.bbox.height(), last.bbox.height());
        const double overlap = VerticalOverlap(s.bbox, last.bbox);
        if (overlap < 0.5 * min_h) continue;
        const double gap = s.bbox.x0 - last.bbox.x1;
        const double em = std::max(s.font_size, last.font_size);
        if (gap > max_gap_em * em || gap < -0.5 * em) continue;
        const double score = overlap / std::max(min_h, 1e-9);
        if (best < 0 || score > best_overlap) {
          best = static_cast<int>(li);
          best_overlap = score;
        }
      }
    }
    if (best < 0) {
      lines.push_back({{idx}, s.bbox, s.direction});
    } else {
      lines[best].members.push_back(idx);
      lines[best].bbox = Union(lines[best].bbox, s.bbox);
    }
  }
  std::stable_sort(lines.begin(), lines.end(),
                   [](const Line& a, const Line& b) {
                     return ReadingOrderKey(a.bbox, 3.0) <
                            ReadingOrderKey(b.bbox, 3.0);
                   });
  std::vector<TextSpan> out;
  out.reserve(spans->size());
  for (size_t li = 0; li < lines.size(); ++li) {
    for (size_t idx : lines[li].members) {
      out.push_back(std::move((*spans)[idx]));
      out.back().line_id = static_cast<int>(li);
    }
  }
  *spans = std::move(out);
}

std::string LineText(std::span<const TextSpan> spans) {
  std::string text;
  const TextSpan* prev = nullptr;
  for (const TextSpan& s : spans) {
    if (prev != nullptr) {
      const double gap = s.direction == 0 ? s.bbox.x0 - prev->bbox.x1
                                          : kJoinGapEm * s.font_size + 1.0;
      const double em = std::max(s.font_size, prev->font_size);
      if (gap > kJoinGapEm * em && !EndsWithBlank(text) &&
          !StartsWithBlank(s.text)) {
        text.push_back(' ');
      }
    }
    text += s.text;
    prev = &s;
  }
  return text;
}

std::vector<AttributedToken> AttributeTokens(std::string_view payload,
                                             std::span<const TextSpan> spans) {
  // Non-blank code points of the spans, tagged with their span.
  std::vector<std::pair<char32_t, int>> stream;
  for (size_t i = 0; i < spans.size(); ++i) {
    size_t pos = 0;
    const std::string& t = spans[i].text;
    while (pos < t.size()) {
      const char32_t cp = utf8::DecodeNext(t, &pos);
      if (!IsBlank(cp)) stream.emplace_back(cp, static_cast<int>(i));
    }
  }
  std::vector<AttributedToken> tokens;
  size_t cursor = 0;
  const int fallback = spans.empty() ? -1 : static_cast<int>(spans.size()) - 1;
  for (std::string_view tok : utf8::SplitTokens(payload)) {
    AttributedToken at{std::string(tok), fallback};
    if (cursor < stream.size()) at.span_index = stream[cursor].second;
    // Consume the token's code points from the stream.
    size_t pos = 0;
    while (pos < tok.size()) {
      const char32_t cp = utf8::DecodeNext(tok, &pos);
      if (cursor < stream.size() && stream[cursor].first == cp) ++cursor;
    }
    tokens.push_back(std::move(at));
  }
  return tokens;
}

double TokenWeightedFontSize(std::string_view payload,
                             std::span<const TextSpan> spans) {
  const std::vector<AttributedToken> tokens = AttributeTokens(payload, spans);
  if (tokens.empty()) return 0.0;
  double sum = 0.0;
  for (const AttributedToken& t : tokens) {
    if (t.span_index >= 0) sum += spans[t.span_index].font_size;
  }
  return sum / static_cast<double>(tokens.size());
}

std::vector<TextLine> BuildLines(std::span<const TextSpan> spans) {
  std::vector<TextLine> lines;
  std::map<int, size_t> index;
  for (const TextSpan& s : spans) {
    auto [it, inserted] = index.emplace(s.line_id, lines.size());
    if (inserted) {
      lines.emplace_back();
      lines.back().bbox = s.bbox;
      lines.back().direction = s.direction;
    }
    TextLine& line = lines[it->second];
    line.spans.push_back(s);
    line.bbox = Union(line.bbox, s.bbox);
    line.fonts.insert(s.font_name);
  }
  for (TextLine& line : lines) {
    line.text = PreprocessText(LineText(line.spans));
    const std::vector<AttributedToken> tokens =
        AttributeTokens(line.text, line.spans);
    size_t bold = 0, italic = 0;
    for (const AttributedToken& t : tokens) {
      if (t.span_index < 0) continue;
      bold += line.spans[t.span_index].bold;
      italic += line.spans[t.span_index].italic;
    }
    line.bold = 2 * bold > tokens.size();
    line.italic = 2 * italic > tokens.size();
  }
  return lines;
}

std::pair<long, double> ReadingOrderKey(const BoundingBox& b, double quantum) {
  return {std::lround(b.y0 / quantum), b.x0};
}

std::vector<LayoutBlock> MergeLinesIntoBlocks(std::span<const TextSpan> spans,
                                              const PageGeometry& g,
                                              const MergeOptions& options) {
  std::vector<TextLine> lines = BuildLines(spans);
  std::erase_if(lines, [](const TextLine& l) { return l.text.empty(); });
  std::stable_sort(lines.begin(), lines.end(),
                   [&](const TextLine& a, const TextLine& b) {
                     return ReadingOrderKey(a.bbox, options.line_quantum) <
                            ReadingOrderKey(b.bbox, options.line_quantum);
                   });
  std::vector<double> heights;
  for (const TextLine& l : lines) {
    if (l.direction == 0) heights.push_back(l.bbox.height());
  }
  const double max_gap = options.gap_factor * Median(heights);

  struct Group {
    std::vector<size_t> lines;
    BoundingBox bbox;
    bool open = true;
  };
  std::vector<Group> groups;
  for (size_t li = 0; li < lines.size(); ++li) {
    const TextLine& line = lines[li];
    int best = -1;
    double best_gap = 0.0;
    if (line.direction == 0) {
      for (size_t gi = 0; gi < groups.size(); ++gi) {
        const Group& grp = groups[gi];
        if (!grp.open) continue;
        const TextLine& head = lines[grp.lines.front()];
        const TextLine& last = lines[grp.lines.back()];
        if (head.direction != 0 || head.fonts != line.fonts ||
            head.bold != line.bold || head.italic != line.italic) {
          continue;
        }
        if (HorizontalOverlap(grp.bbox, line.bbox) <= 0.0) continue;
        const double gap = line.bbox.y0 - last.bbox.y1;
        const double min_h = std::min(line.bbox.height(), last.bbox.height());
        if (gap > max_gap || gap <= -0.5 * min_h) continue;
        if (best < 0 || gap < best_gap) {
          best = static_cast<int>(gi);
          best_gap = gap;
        }
      }
    }
    // The line now sits below every open block it overlaps horizontally, so
    // none of them can continue past it.
    for (size_t gi = 0; gi < groups.size(); ++gi) {
      if (static_cast<int>(gi) != best &&
          HorizontalOverlap(groups[gi].bbox, line.bbox) > 0.0) {
        groups[gi].open = false;
      }
    }
    if (best < 0) {
      groups.push_back({{li}, line.bbox, line.direction == 0});
    } else {
      groups[best].lines.push_back(li);
      groups[best].bbox = Union(groups[best].bbox, line.bbox);
    }
  }

  std::stable_sort(groups.begin(), groups.end(),
                   [&](const Group& a, const Group& b) {
                     return ReadingOrderKey(a.bbox, options.line_quantum) <
                            ReadingOrderKey(b.bbox, options.line_quantum);
                   });
  std::vector<LayoutBlock> blocks;
  blocks.reserve(groups.size());
  for (const Group& grp : groups) {
    LayoutBlock block;
    block.block_id = absl::StrCat("p", g.page_index, "_b", blocks.size());
    block.kind = BlockKind::kText;
    block.label = LayoutLabel::kBody;
    block.label_origin = LabelOrigin::kHeuristic;
    block.bbox = grp.bbox;
    block.page_index = g.page_index;
    std::vector<std::string> texts;
    for (size_t li : grp.lines) {
      texts.push_back(lines[li].text);
      block.spans.insert(block.spans.end(), lines[li].spans.begin(),
                         lines[li].spans.end());
    }
    block.payload = PreprocessText(absl::StrJoin(texts, "\n"));
    ComputePageMargins(block.bbox, g, &block.clipped);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace dla::pdf
