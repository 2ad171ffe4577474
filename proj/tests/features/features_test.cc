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

#include <random>

#include "gtest/gtest.h"
#include "tests/testing/oracles.h"
#include "tests/testing/test_util.h"

namespace dla::features {
namespace {

constexpr PageGeometry kA4{0, 595, 842, 0};

TextSpan Span(std::string text, bool bold, double size,
              std::string font = "Times-Roman") {
  TextSpan s;
  s.text = std::move(text);
  s.bold = bold;
  s.font_size = size;
  s.font_name = std::move(font);
  s.bbox = {0, 0, 10, 10};
  return s;
}

LayoutBlock TextBlock(std::vector<TextSpan> spans, std::string payload) {
  LayoutBlock b;
  b.block_id = "p0_b0";
  b.kind = BlockKind::kText;
  b.label = LayoutLabel::kBody;
  b.bbox = {100, 200, 300, 260};
  b.payload = std::move(payload);
  b.spans = std::move(spans);
  return b;
}

TEST(ComputeFeaturesTest, AllBoldHeadline) {
  const LayoutBlock b = TextBlock(
      {Span("REAL DECRETO 12/2020", true, 14.0, "Times-Bold")},
      "REAL DECRETO 12/2020");
  ASSERT_OK_AND_ASSIGN(const FeatureVector fv, ComputeFeatures(b, kA4));
  ASSERT_TRUE(fv.text.has_value());
  EXPECT_EQ(fv.text->f13, 1.0);
  EXPECT_EQ(fv.text->f18, 3);
  EXPECT_EQ(fv.text->f15, 14.0);
  // Digits and the slash are not letters.
  EXPECT_EQ(fv.text->f17, 1.0);
  EXPECT_EQ(fv.text->f16, std::vector<std::string>{"Times-Bold"});
}

TEST(ComputeFeaturesTest, BoldProportion) {
  const LayoutBlock b =
      TextBlock({Span("uno dos", true, 10), Span("tres cuatro cinco seis "
                                                 "siete ocho",
                                                 false, 10)},
                "uno dos tres cuatro cinco seis siete ocho");
  ASSERT_OK_AND_ASSIGN(const FeatureVector fv, ComputeFeatures(b, kA4));
  EXPECT_EQ(fv.text->f18, 8);
  EXPECT_EQ(fv.text->f13, 0.25);
  EXPECT_EQ(fv.text->f14, 0.0);
}

TEST(ComputeFeaturesTest, TokenWeightedSize) {
  const LayoutBlock b = TextBlock(
      {Span("a b c d e f g h i j", false, 12), Span("k l m n o", false, 18)},
      "a b c d e f g h i j k l m n o");
  ASSERT_OK_AND_ASSIGN(const FeatureVector fv, ComputeFeatures(b, kA4));
  EXPECT_DOUBLE_EQ(fv.text->f15, (10 * 12 + 5 * 18) / 15.0);
}

TEST(ComputeFeaturesTest, TokenBoldnessFollowsFirstCharacter) {
  // "Ley" starts in the bold span and continues in the regular one.
  const LayoutBlock b =
      TextBlock({Span("Le", true, 10), Span("y nueva", false, 10)},
                "Ley nueva");
  ASSERT_OK_AND_ASSIGN(const FeatureVector fv, ComputeFeatures(b, kA4));
  EXPECT_EQ(fv.text->f18, 2);
  EXPECT_EQ(fv.text->f13, 0.5);
}

TEST(ComputeFeaturesTest, GeometryFeatures) {
  const LayoutBlock b = TextBlock({Span("x", false, 10)}, "x");
  ASSERT_OK_AND_ASSIGN(const FeatureVector fv, ComputeFeatures(b, kA4));
  EXPECT_EQ(fv.f1, 0);
  EXPECT_EQ(fv.f2, 100);
  EXPECT_EQ(fv.f3, 200);
  EXPECT_EQ(fv.f4, 300);
  EXPECT_EQ(fv.f5, 260);
  EXPECT_EQ(fv.f6, (fv.f2 + fv.f4) / 2);
  EXPECT_EQ(fv.f7, (fv.f3 + fv.f5) / 2);
  EXPECT_EQ(fv.f8, 100);
  EXPECT_EQ(fv.f9, 200);
  EXPECT_EQ(fv.f10, 295);
  EXPECT_EQ(fv.f11, 582);
  EXPECT_EQ(fv.f12, std::optional<std::string>("x"));
  EXPECT_EQ(fv.b, BlockKind::kText);
}

TEST(ComputeFeaturesTest, ImageBlockHasNoTextFeatures) {
  LayoutBlock b;
  b.kind = BlockKind::kImage;
  b.label = LayoutLabel::kImage;
  b.bbox = {10, 10, 110, 60};
  b.page_index = 2;
  ASSERT_OK_AND_ASSIGN(const FeatureVector fv, ComputeFeatures(b, kA4));
  EXPECT_EQ(fv.f1, 2);
  EXPECT_FALSE(fv.f12.has_value());
  EXPECT_FALSE(fv.text.has_value());
  EXPECT_EQ(fv.b, BlockKind::kImage);
  EXPECT_EQ(fv.l, LayoutLabel::kImage);
}

TEST(ComputeFeaturesTest, EmptyPayloadIsRejected) {
  const LayoutBlock b = TextBlock({Span(" ", false, 10)}, "");
  EXPECT_FALSE(ComputeFeatures(b, kA4).ok());
}

TEST(ComputeFeaturesTest, AgreesWithNaiveTokenCounter) {
  std::mt19937_64 rng(424242);
  for (int i = 0; i < 1000; ++i) {
    const LayoutBlock b = testing::RandomTextBlock(rng, i % 7);
    ASSERT_OK_AND_ASSIGN(const FeatureVector fv, ComputeFeatures(b, kA4));
    const testing::NaiveTextFeatures want = testing::CountTextFeatures(b);
    ASSERT_TRUE(fv.text.has_value());
    const TextFeatures& got = *fv.text;
    ASSERT_EQ(got.f18, want.tokens) << *b.payload;
    ASSERT_EQ(got.f13, want.bold_fraction) << *b.payload;
    ASSERT_EQ(got.f14, want.italic_fraction) << *b.payload;
    ASSERT_EQ(got.f15, want.mean_size) << *b.payload;
    ASSERT_EQ(got.f16, want.fonts);
    ASSERT_EQ(got.f17, want.upper_fraction) << *b.payload;
    ASSERT_EQ(fv.f1, b.page_index);
  }
}

TEST(NormalizeTest, ComponentOrderAndScaling) {
  LayoutBlock b = TextBlock({Span("Hola Mundo", true, 12, "Helvetica-Bold")},
                            "Hola Mundo");
  b.bbox = {297.5, 0, 595, 421};
  b.page_index = 3;
  ASSERT_OK_AND_ASSIGN(const FeatureVector fv, ComputeFeatures(b, kA4));
  FontDictionary fd;
  fd.Register({"Times-Roman"});
  fd.Register({"Helvetica-Bold"});
  ASSERT_OK_AND_ASSIGN(const ClassifierInput in,
                       NormalizeForClassifier(fv, kA4, fd));
  const auto& v = in.values;
  EXPECT_EQ(v[0], 3);  // f1 stays raw.
  EXPECT_EQ(v[1], 0.5);
  EXPECT_EQ(v[2], 0.0);
  EXPECT_EQ(v[3], 1.0);
  EXPECT_EQ(v[4], 0.5);
  EXPECT_EQ(v[11], 1.0);   // f13
  EXPECT_EQ(v[12], 0.0);   // f14
  EXPECT_EQ(v[13], 12.0);  // f15
  EXPECT_EQ(v[14], 2.0);   // f16 code
  EXPECT_EQ(v[15], 2.0 / 9);  // f17
  EXPECT_EQ(v[16], 2.0);   // f18
}

TEST(NormalizeTest, FullPageBlockHasZeroMargins) {
  LayoutBlock b = TextBlock({Span("x", false, 10)}, "x");
  b.bbox = kA4.Bounds();
  ASSERT_OK_AND_ASSIGN(const FeatureVector fv, ComputeFeatures(b, kA4));
  ASSERT_OK_AND_ASSIGN(const ClassifierInput in,
                       NormalizeForClassifier(fv, kA4, FontDictionary()));
  for (int i = 7; i <= 10; ++i) EXPECT_EQ(in.values[i], 0.0) << i;
}

TEST(NormalizeTest, UnseenFontsMapToReservedCode) {
  const LayoutBlock b = TextBlock({Span("x", false, 10, "Futura")}, "x");
  ASSERT_OK_AND_ASSIGN(const FeatureVector fv, ComputeFeatures(b, kA4));
  FontDictionary fd;
  fd.Register({"Times-Roman"});
  ASSERT_OK_AND_ASSIGN(const ClassifierInput in,
                       NormalizeForClassifier(fv, kA4, fd));
  EXPECT_EQ(in.values[14], FontDictionary::kUnseen);
}

TEST(NormalizeTest, RejectsNonTextBlocks) {
  FeatureVector fv;
  fv.b = BlockKind::kLink;
  EXPECT_FALSE(NormalizeForClassifier(fv, kA4, FontDictionary()).ok());
}

TEST(NormalizeTest, NormalizedComponentsInUnitInterval) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const LayoutBlock b = testing::RandomTextBlock(rng, 0);
    ASSERT_OK_AND_ASSIGN(const FeatureVector fv, ComputeFeatures(b, kA4));
    ASSERT_OK_AND_ASSIGN(const ClassifierInput in,
                         NormalizeForClassifier(fv, kA4, FontDictionary()));
    for (int k : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 15}) {
      ASSERT_GE(in.values[k], 0.0) << k;
      ASSERT_LE(in.values[k], 1.0) << k;
    }
  }
}

TEST(NormalizeTest, IdenticalBlocksGiveIdenticalVectors) {
  std::mt19937_64 a(5), b(5);
  const LayoutBlock x = testing::RandomTextBlock(a, 1);
  const LayoutBlock y = testing::RandomTextBlock(b, 1);
  FontDictionary fd;
  EXPECT_EQ(*NormalizeForClassifier(*ComputeFeatures(x, kA4), kA4, fd),
            *NormalizeForClassifier(*ComputeFeatures(y, kA4), kA4, fd));
}

TEST(FontDictionaryTest, CodesAreInsertionOrderedAndStable) {
  FontDictionary fd;
  EXPECT_EQ(fd.Register({"Times-Bold"}), 1);
  EXPECT_EQ(fd.Register({"Helvetica", "Times-Roman"}), 2);
  EXPECT_EQ(fd.Register({"Times-Bold"}), 1);
  EXPECT_EQ(fd.size(), 2u);
  EXPECT_EQ(fd.Encode({"Courier"}), FontDictionary::kUnseen);
  EXPECT_EQ(fd.Decode(2),
            (std::vector<std::string>{"Helvetica", "Times-Roman"}));
  EXPECT_FALSE(fd.Decode(0).has_value());
  EXPECT_FALSE(fd.Decode(3).has_value());
}

TEST(FontDictionaryTest, SerializeRoundTrip) {
  FontDictionary fd;
  fd.Register({"Times-Bold"});
  fd.Register({"Helvetica", "Times-Roman"});
  fd.Register({});
  ASSERT_OK_AND_ASSIGN(const FontDictionary back,
                       FontDictionary::Parse(fd.Serialize()));
  EXPECT_EQ(back, fd);
  for (int code = 1; code <= 3; ++code) {
    EXPECT_EQ(back.Encode(*back.Decode(code)), code);
  }
}

TEST(FontDictionaryTest, ParseRejectsGapsAndDuplicates) {
  EXPECT_FALSE(FontDictionary::Parse("2\tTimes-Bold\n").ok());
  EXPECT_FALSE(FontDictionary::Parse("1\tA\n2\tA\n").ok());
  EXPECT_FALSE(FontDictionary::Parse("x\tA\n").ok());
}

}  // namespace
}  // namespace dla::features
