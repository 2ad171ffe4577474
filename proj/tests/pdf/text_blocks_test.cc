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
#include <random>

#include "dla/core/utf8.h"
#include "gtest/gtest.h"

namespace dla::pdf {
namespace {

constexpr PageGeometry kA4{0, 595, 842, 0};

TextSpan Word(std::string text, double x0, double y0, double size = 10,
              int line = 0, std::string font = "Times-Roman",
              bool bold = false) {
  TextSpan s;
  s.text = std::move(text);
  s.font_name = std::move(font);
  s.font_size = size;
  s.bold = bold;
  const double w = 0.5 * size * static_cast<double>(utf8::Decode(s.text).size());
  s.bbox = {x0, y0, x0 + w, y0 + size};
  s.line_id = line;
  return s;
}

// A line of words laid out left to right, one span per line.
TextSpan Line(std::string text, double y0, double size = 10,
              std::string font = "Times-Roman", bool bold = false) {
  return Word(std::move(text), 72, y0, size, 0, std::move(font), bold);
}

int CountTokens(std::string_view s) {
  return static_cast<int>(utf8::SplitTokens(s).size());
}

TEST(PreprocessTextTest, Examples) {
  EXPECT_EQ(PreprocessText("Real\nDecreto"), "Real Decreto");
  EXPECT_EQ(PreprocessText("BOE\xEF\xBF\xBFnúm.\xEF\xBF\xBF" "12"),
            "BOE núm. 12");
  EXPECT_EQ(PreprocessText("  a   b  "), "a b");
  EXPECT_EQ(PreprocessText("a\r\n\tb"), "a b");
  EXPECT_EQ(PreprocessText(""), "");
  EXPECT_EQ(PreprocessText(" \n "), "");
}

TEST(PreprocessTextTest, Idempotent) {
  for (std::string_view s : {"x  y", "\n a \xEF\xBF\xBF b\n", "áé  íó"}) {
    const std::string once = PreprocessText(s);
    EXPECT_EQ(PreprocessText(once), once);
  }
}

TEST(ReconstructTest, JoinsWordsOfOneLine) {
  const std::vector<TextSpan> words = {Word("Boletín", 72, 100, 10, 1),
                                       Word("Oficial", 120, 100, 10, 1)};
  const std::vector<TextSpan> out = ReconstructSpacelessText(words);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].text, "Boletín Oficial");
  EXPECT_EQ(out[0].bbox, Union(words[0].bbox, words[1].bbox));
}

TEST(ReconstructTest, TwoLineReferencesGiveTwoSpansInOrder) {
  const std::vector<TextSpan> words = {
      Word("del", 100, 120, 10, 2), Word("Estado", 130, 120, 10, 2),
      Word("Boletín", 72, 100, 10, 1), Word("Oficial", 120, 100, 10, 1)};
  const std::vector<TextSpan> out = ReconstructSpacelessText(words);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].text, "Boletín Oficial");
  EXPECT_EQ(out[1].text, "del Estado");
}

TEST(ReconstructTest, EmptyInput) {
  EXPECT_TRUE(ReconstructSpacelessText({}).empty());
}

TEST(ReconstructTest, PermutationInvariant) {
  std::vector<TextSpan> words;
  const char* kWords[] = {"uno", "dos", "tres", "cuatro", "cinco", "seis"};
  for (int line = 0; line < 4; ++line) {
    double x = 72;
    for (int w = 0; w < 6; ++w) {
      words.push_back(Word(kWords[(w + line) % 6], x, 100 + 14 * line, 10,
                           line));
      x += words.back().bbox.width() + 3;
    }
  }
  // Oracle: group by line reference, sort by x0, join with spaces.
  std::vector<std::string> want;
  for (int line = 0; line < 4; ++line) {
    std::vector<const TextSpan*> members;
    for (const TextSpan& w : words) {
      if (w.line_id == line) members.push_back(&w);
    }
    std::sort(members.begin(), members.end(),
              [](const TextSpan* a, const TextSpan* b) {
                return a->bbox.x0 < b->bbox.x0;
              });
    std::string text;
    for (const TextSpan* m : members) {
      if (!text.empty()) text += ' ';
      text += m->text;
    }
    want.push_back(text);
  }
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(words.begin(), words.end(), rng);
    const std::vector<TextSpan> out = ReconstructSpacelessText(words);
    ASSERT_EQ(out.size(), want.size());
    for (size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i].text, want[i]);
  }
}

TEST(LineTextTest, InsertsSpaceAtGaps) {
  const std::vector<TextSpan> spans = {Word("Hola", 72, 100),
                                       Word("mundo", 100, 100)};
  EXPECT_EQ(LineText(spans), "Hola mundo");
  const std::vector<TextSpan> touching = {Word("Ho", 72, 100),
                                          Word("la", 82, 100)};
  EXPECT_EQ(LineText(touching), "Hola");
}

TEST(AttributeTokensTest, FirstCharacterOwnsToken) {
  const std::vector<TextSpan> spans = {Word("Le", 72, 100),
                                       Word("y de", 82, 100)};
  const std::vector<AttributedToken> tokens = AttributeTokens("Ley de", spans);
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].text, "Ley");
  EXPECT_EQ(tokens[0].span_index, 0);
  EXPECT_EQ(tokens[1].text, "de");
  EXPECT_EQ(tokens[1].span_index, 1);
}

TEST(MergeTest, CloseLinesWithSameFontsMerge) {
  std::vector<TextSpan> spans = {Line("primera línea del párrafo", 100, 12),
                                 Line("segunda línea", 114, 12)};
  AssignLineIds(&spans);
  const std::vector<LayoutBlock> blocks = MergeLinesIntoBlocks(spans, kA4);
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].payload,
            std::optional<std::string>(
                "primera línea del párrafo segunda línea"));
  EXPECT_EQ(blocks[0].bbox, Union(spans[0].bbox, spans[1].bbox));
  EXPECT_EQ(blocks[0].kind, BlockKind::kText);
  EXPECT_EQ(blocks[0].label_origin, LabelOrigin::kHeuristic);
}

TEST(MergeTest, DifferentStyleNeverMerges) {
  std::vector<TextSpan> spans = {
      Line("texto normal", 100, 12),
      Line("TÍTULO", 114, 16, "Times-Bold", /*bold=*/true)};
  AssignLineIds(&spans);
  EXPECT_EQ(MergeLinesIntoBlocks(spans, kA4).size(), 2u);
}

TEST(MergeTest, DistantLinesStaySeparate) {
  std::vector<TextSpan> spans = {Line("uno", 100, 12), Line("dos", 140, 12)};
  AssignLineIds(&spans);
  EXPECT_EQ(MergeLinesIntoBlocks(spans, kA4).size(), 2u);
}

TEST(MergeTest, SizeIsTokenWeightedAcrossLines) {
  std::vector<TextSpan> spans = {
      Line("a b c d e f g h i j", 100, 12),
      Line("k l m n o", 114, 18)};
  AssignLineIds(&spans);
  const std::vector<LayoutBlock> blocks = MergeLinesIntoBlocks(spans, kA4);
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_DOUBLE_EQ(TokenWeightedFontSize(*blocks[0].payload, blocks[0].spans),
                   (10 * 12 + 5 * 18) / 15.0);
}

TEST(MergeTest, PreservesTokensAndReadingOrder) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> words(1, 8);
  std::bernoulli_distribution bold(0.3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TextSpan> spans;
    double y = 60;
    int tokens = 0;
    for (int line = 0; line < 30; ++line) {
      std::string text;
      const int n = words(rng);
      for (int k = 0; k < n; ++k) text += (k ? " w" : "w") + std::to_string(k);
      tokens += n;
      const bool b = bold(rng);
      spans.push_back(Line(text, y, 10, b ? "Times-Bold" : "Times-Roman", b));
      y += bold(rng) ? 30 : 12;
    }
    AssignLineIds(&spans);
    const std::vector<LayoutBlock> blocks = MergeLinesIntoBlocks(spans, kA4);
    int merged_tokens = 0;
    for (const LayoutBlock& b : blocks) merged_tokens += CountTokens(*b.payload);
    EXPECT_EQ(merged_tokens, tokens);
    for (size_t i = 1; i < blocks.size(); ++i) {
      EXPECT_LE(ReadingOrderKey(blocks[i - 1].bbox, 3.0),
                ReadingOrderKey(blocks[i].bbox, 3.0));
    }
  }
}

TEST(MergeTest, Idempotent) {
  std::vector<TextSpan> spans = {Line("uno dos", 100), Line("tres", 112),
                                 Line("cuatro", 160), Line("cinco", 172)};
  AssignLineIds(&spans);
  const std::vector<LayoutBlock> once = MergeLinesIntoBlocks(spans, kA4);
  // Feed each merged block back as one line-level span.
  std::vector<TextSpan> again;
  for (const LayoutBlock& b : once) {
    TextSpan s = b.spans.front();
    s.text = *b.payload;
    s.bbox = b.bbox;
    again.push_back(s);
  }
  AssignLineIds(&again);
  const std::vector<LayoutBlock> twice = MergeLinesIntoBlocks(again, kA4);
  ASSERT_EQ(twice.size(), once.size());
  for (size_t i = 0; i < once.size(); ++i) {
    EXPECT_EQ(twice[i].payload, once[i].payload);
    EXPECT_EQ(twice[i].bbox, once[i].bbox);
  }
}

TEST(MergeTest, EmptyPage) {
  EXPECT_TRUE(MergeLinesIntoBlocks({}, kA4).empty());
}

}  // namespace
}  // namespace dla::pdf
