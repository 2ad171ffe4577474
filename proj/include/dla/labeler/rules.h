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

// Heuristic text labeling rules.
//
// Rule files hold one rule per line; blank lines and lines starting with '#'
// are ignored:
//
//   IF f13 > 0.5 THEN Title
//   IF f12 CONTAINS_ANY [lunes, martes] THEN Identifier
//   IF f16 CONTAINS_ANY [Courier] AND f15 <= 9 THEN Identifier
//   DEFAULT Body
//
// Numeric conditions compare f1..f11, f13..f15, f17 or f18 (raw values)
// against a constant with <, <=, >, >=, == or !=. `f12 CONTAINS_ANY` matches
// keywords case-insensitively against whole payload tokens (punctuation at
// token edges ignored); keywords with spaces match as substrings.
// `f16 CONTAINS_ANY` matches when any font name contains any of the listed
// fragments, case-insensitively. Conditions are joined with AND. The first
// matching rule wins; DEFAULT (Body when omitted) applies otherwise.

#ifndef DLA_LABELER_RULES_H_
#define DLA_LABELER_RULES_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/core/layout.h"
#include "dla/features/features.h"

namespace dla::labeler {

struct Condition {
  enum class Kind { kNumeric, kKeywords, kFonts };
  enum class Op { kLt, kLe, kGt, kGe, kEq, kNe };

  Kind kind = Kind::kNumeric;
  int feature = 0;  // 1..18.
  Op op = Op::kGt;
  double value = 0.0;
  std::vector<std::string> terms;  // Lowercased.
};

struct Rule {
  std::vector<Condition> conditions;
  LayoutLabel label = LayoutLabel::kBody;
  int line = 0;  // Source line, for diagnostics.
};

struct HeuristicRuleSet {
  std::vector<Rule> rules;
  LayoutLabel default_label = LayoutLabel::kBody;
};

absl::StatusOr<HeuristicRuleSet> ParseRules(std::string_view text);

bool Matches(const Rule& rule, const features::FeatureVector& fv);

// Label of one text block: the first matching rule, else the default.
LayoutLabel ApplyRules(const HeuristicRuleSet& rules,
                       const features::FeatureVector& fv);

// Labels every vector; non-text vectors keep the label of their kind.
std::vector<LayoutLabel> ApplyHeuristics(
    const HeuristicRuleSet& rules,
    std::span<const features::FeatureVector> blocks);

}  // namespace dla::labeler

#endif  // DLA_LABELER_RULES_H_
