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

#include "dla/labeler/rules.h"

#include "gtest/gtest.h"
#include "tests/testing/test_util.h"

namespace dla::labeler {
namespace {

using features::FeatureVector;
using features::TextFeatures;

FeatureVector Text(std::string payload, double bold = 0.0, double size = 10.0,
                   std::vector<std::string> fonts = {"Times-Roman"}) {
  FeatureVector fv;
  fv.b = BlockKind::kText;
  fv.f12 = std::move(payload);
  TextFeatures t;
  t.f13 = bold;
  t.f15 = size;
  t.f16 = std::move(fonts);
  t.f18 = 1;
  fv.text = t;
  return fv;
}

TEST(ParseRulesTest, BoldRuleLabelsTitle) {
  ASSERT_OK_AND_ASSIGN(const HeuristicRuleSet rules,
                       ParseRules("IF f13 > 0.5 THEN Title\n"));
  EXPECT_EQ(ApplyRules(rules, Text("x", 0.8)), LayoutLabel::kTitle);
  EXPECT_EQ(ApplyRules(rules, Text("x", 0.5)), LayoutLabel::kBody);
}

TEST(ParseRulesTest, WeekdayKeywordsLabelIdentifier) {
  ASSERT_OK_AND_ASSIGN(
      const HeuristicRuleSet rules,
      ParseRules("# masthead\n"
                 "IF f12 CONTAINS_ANY [lunes, martes, miércoles] THEN "
                 "Identifier\n"));
  EXPECT_EQ(ApplyRules(rules, Text("BOE núm. 12, Lunes 3 de enero")),
            LayoutLabel::kIdentifier);
  EXPECT_EQ(ApplyRules(rules, Text("(martes)")), LayoutLabel::kIdentifier);
  // Whole tokens only.
  EXPECT_EQ(ApplyRules(rules, Text("lunesco")), LayoutLabel::kBody);
}

TEST(ParseRulesTest, NoMatchFallsBackToDefault) {
  ASSERT_OK_AND_ASSIGN(const HeuristicRuleSet body,
                       ParseRules("IF f13 > 0.5 THEN Title\n"));
  EXPECT_EQ(ApplyRules(body, Text("x")), LayoutLabel::kBody);
  ASSERT_OK_AND_ASSIGN(const HeuristicRuleSet summary,
                       ParseRules("IF f13 > 0.5 THEN Title\nDEFAULT Summary\n"));
  EXPECT_EQ(ApplyRules(summary, Text("x")), LayoutLabel::kSummary);
}

TEST(ParseRulesTest, FirstMatchWinsAndConjunctions) {
  ASSERT_OK_AND_ASSIGN(
      const HeuristicRuleSet rules,
      ParseRules("IF f16 CONTAINS_ANY [courier] AND f15 <= 9 THEN Identifier\n"
                 "IF f15 >= 12 THEN Title\n"
                 "IF f15 >= 8 THEN Summary\n"));
  EXPECT_EQ(ApplyRules(rules, Text("x", 0, 8, {"Courier"})),
            LayoutLabel::kIdentifier);
  EXPECT_EQ(ApplyRules(rules, Text("x", 0, 10, {"Courier"})),
            LayoutLabel::kSummary);
  EXPECT_EQ(ApplyRules(rules, Text("x", 0, 14)), LayoutLabel::kTitle);
}

TEST(ParseRulesTest, RejectsMalformedRules) {
  EXPECT_FALSE(ParseRules("IF f13 > THEN Title").ok());
  EXPECT_FALSE(ParseRules("IF f99 > 1 THEN Title").ok());
  EXPECT_FALSE(ParseRules("IF f13 > 0.5 THEN Table").ok());
  EXPECT_FALSE(ParseRules("IF f13 ~ 0.5 THEN Title").ok());
  EXPECT_FALSE(ParseRules("WHEN f13 > 0.5 THEN Title").ok());
  EXPECT_FALSE(ParseRules("IF f12 CONTAINS_ANY lunes THEN Identifier").ok());
}

TEST(ApplyHeuristicsTest, NonTextKeepsKindLabel) {
  ASSERT_OK_AND_ASSIGN(const HeuristicRuleSet rules,
                       ParseRules("IF f13 > 0.5 THEN Title\n"));
  FeatureVector table;
  table.b = BlockKind::kTable;
  table.l = LayoutLabel::kTable;
  const std::vector<FeatureVector> blocks = {Text("x", 1.0), table};
  EXPECT_EQ(ApplyHeuristics(rules, blocks),
            (std::vector<LayoutLabel>{LayoutLabel::kTitle,
                                      LayoutLabel::kTable}));
}

}  // namespace
}  // namespace dla::labeler
