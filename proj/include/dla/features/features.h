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

// Block descriptors f1..f18 and their numeric classifier form.

#ifndef DLA_FEATURES_FEATURES_H_
#define DLA_FEATURES_FEATURES_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/core/layout.h"

namespace dla::features {

// Features that exist only for text blocks.
struct TextFeatures {
  double f13 = 0.0;  // Proportion of bold tokens.
  double f14 = 0.0;  // Proportion of italic tokens.
  double f15 = 0.0;  // Token-weighted mean font size.
  std::vector<std::string> f16;  // Sorted distinct font names.
  double f17 = 0.0;  // Uppercase letters over letters.
  int f18 = 0;       // Number of space-separated tokens.

  friend bool operator==(const TextFeatures&, const TextFeatures&) = default;
};

struct FeatureVector {
  int f1 = 0;  // Page index.
  double f2 = 0.0, f3 = 0.0, f4 = 0.0, f5 = 0.0;  // x0, y0, x1, y1.
  double f6 = 0.0, f7 = 0.0;  // Center.
  double f8 = 0.0, f9 = 0.0, f10 = 0.0, f11 = 0.0;  // Left/top/right/bottom.
  std::optional<std::string> f12;  // Payload.
  std::optional<TextFeatures> text;
  BlockKind b = BlockKind::kText;
  LayoutLabel l = LayoutLabel::kBody;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Fails for text blocks whose payload is empty.
absl::StatusOr<FeatureVector> ComputeFeatures(const LayoutBlock& block,
                                              const PageGeometry& g);

// Font-name tuples to small integer codes. Codes start at 1 in insertion
// order; 0 is reserved for tuples not seen during training. Not internally
// synchronized.
class FontDictionary {
 public:
  static constexpr int kUnseen = 0;

  // Returns the existing code or assigns the next one.
  int Register(const std::vector<std::string>& fonts);
  // Code of a registered tuple, or kUnseen.
  int Encode(const std::vector<std::string>& fonts) const;
  std::optional<std::vector<std::string>> Decode(int code) const;
  size_t size() const { return tuples_.size(); }

  // One "code<TAB>name|name..." line per tuple.
  std::string Serialize() const;
  static absl::StatusOr<FontDictionary> Parse(std::string_view text);

  friend bool operator==(const FontDictionary&,
                         const FontDictionary&) = default;

 private:
  static std::string Key(const std::vector<std::string>& fonts);

  std::vector<std::vector<std::string>> tuples_;
  std::map<std::string, int> codes_;
};

inline constexpr int kFeatureVersion = 1;
inline constexpr int kNumClassifierFeatures = 17;

struct ClassifierInput {
  int version = kFeatureVersion;
  std::array<double, kNumClassifierFeatures> values{};

  friend bool operator==(const ClassifierInput&,
                         const ClassifierInput&) = default;
};

// [f1, f2/W, f3/H, f4/W, f5/H, f6/W, f7/H, f8/W, f9/H, f10/W, f11/H, f13, f14,
//  f15, code(f16), f17, f18]. Fails for non-text vectors.
absl::StatusOr<ClassifierInput> NormalizeForClassifier(const FeatureVector& fv,
                                                       const PageGeometry& g,
                                                       const FontDictionary& fd);

}  // namespace dla::features

#endif  // DLA_FEATURES_FEATURES_H_
