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

#include "dla/labeler/forest.h"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"
#include "tests/testing/test_util.h"

namespace dla::labeler {
namespace {

using features::ClassifierInput;

struct Toy {
  std::vector<ClassifierInput> inputs;
  std::vector<LayoutLabel> labels;
};

// Two classes split by feature 11 (bold proportion) at 0.5; every other
// feature is noise.
Toy SeparableToy(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Toy toy;
  for (int i = 0; i < n; ++i) {
    ClassifierInput in;
    for (double& v : in.values) v = u(rng);
    const bool title = i % 2 == 0;
    in.values[11] = title ? 0.55 + 0.45 * u(rng) : 0.45 * u(rng);
    toy.inputs.push_back(in);
    toy.labels.push_back(title ? LayoutLabel::kTitle : LayoutLabel::kBody);
  }
  return toy;
}

// Best training accuracy of any single threshold on any feature, by
// exhaustive search.
double BestStumpAccuracy(const Toy& toy) {
  const size_t n = toy.inputs.size();
  double best = 0.0;
  for (int f = 0; f < features::kNumClassifierFeatures; ++f) {
    for (size_t t = 0; t < n; ++t) {
      const double threshold = toy.inputs[t].values[f];
      for (bool title_left : {true, false}) {
        int correct = 0;
        for (size_t i = 0; i < n; ++i) {
          const bool left = toy.inputs[i].values[f] <= threshold;
          const LayoutLabel guess = left == title_left ? LayoutLabel::kTitle
                                                       : LayoutLabel::kBody;
          correct += guess == toy.labels[i];
        }
        best = std::max(best, static_cast<double>(correct) / n);
      }
    }
  }
  return best;
}

TEST(ForestTest, SeparableToyIsLearnedPerfectly) {
  const Toy toy = SeparableToy(200, 1);
  ASSERT_EQ(BestStumpAccuracy(toy), 1.0);
  ForestParams params;
  params.n_trees = 25;
  ASSERT_OK_AND_ASSIGN(const ForestModel model,
                       ForestModel::Train(toy.inputs, toy.labels, params, {}));
  int correct = 0;
  for (size_t i = 0; i < toy.inputs.size(); ++i) {
    ASSERT_OK_AND_ASSIGN(const Prediction p, model.Predict(toy.inputs[i]));
    correct += p.label == toy.labels[i];
    EXPECT_GT(p.confidence, 0.5);
  }
  EXPECT_EQ(correct, 200);
}

TEST(ForestTest, SameSeedSameModel) {
  const Toy toy = SeparableToy(120, 2);
  ForestParams params;
  params.n_trees = 10;
  params.seed = 77;
  ASSERT_OK_AND_ASSIGN(const ForestModel a,
                       ForestModel::Train(toy.inputs, toy.labels, params, {}));
  ASSERT_OK_AND_ASSIGN(const ForestModel b,
                       ForestModel::Train(toy.inputs, toy.labels, params, {}));
  EXPECT_EQ(a.Serialize(), b.Serialize());
  params.seed = 78;
  ASSERT_OK_AND_ASSIGN(const ForestModel c,
                       ForestModel::Train(toy.inputs, toy.labels, params, {}));
  EXPECT_NE(a.Serialize(), c.Serialize());
}

TEST(ForestTest, SingleClassGivesConstantModelWithWarning) {
  Toy toy = SeparableToy(30, 3);
  std::fill(toy.labels.begin(), toy.labels.end(), LayoutLabel::kSummary);
  std::vector<std::string> warnings;
  ASSERT_OK_AND_ASSIGN(
      const ForestModel model,
      ForestModel::Train(toy.inputs, toy.labels, {}, {}, &warnings));
  EXPECT_FALSE(warnings.empty());
  for (const ClassifierInput& in : SeparableToy(20, 4).inputs) {
    ASSERT_OK_AND_ASSIGN(const Prediction p, model.Predict(in));
    EXPECT_EQ(p.label, LayoutLabel::kSummary);
    EXPECT_EQ(p.confidence, 1.0);
  }
}

TEST(ForestTest, RejectsEmptyAndMismatchedInput) {
  EXPECT_FALSE(ForestModel::Train({}, {}, {}, {}).ok());
  const Toy toy = SeparableToy(10, 5);
  const std::vector<LayoutLabel> short_labels(toy.labels.begin(),
                                              toy.labels.end() - 1);
  EXPECT_FALSE(ForestModel::Train(toy.inputs, short_labels, {}, {}).ok());
}

TEST(ForestTest, StaleFeatureVersionIsRejected) {
  const Toy toy = SeparableToy(20, 6);
  ForestParams params;
  params.n_trees = 3;
  ASSERT_OK_AND_ASSIGN(const ForestModel model,
                       ForestModel::Train(toy.inputs, toy.labels, params, {}));
  ClassifierInput stale = toy.inputs[0];
  stale.version = features::kFeatureVersion + 1;
  EXPECT_FALSE(model.Predict(stale).ok());
}

TEST(ForestTest, TieGoesToLowerLabelCode) {
  const Toy toy = SeparableToy(20, 7);
  ForestParams params;
  params.n_trees = 2;
  ASSERT_OK_AND_ASSIGN(ForestModel model,
                       ForestModel::Train(toy.inputs, toy.labels, params, {}));
  ASSERT_EQ(model.classes(),
            (std::vector<LayoutLabel>{LayoutLabel::kTitle, LayoutLabel::kBody}));
  ForestModel::Node body_leaf, title_leaf;
  body_leaf.counts = {0, 3};
  title_leaf.counts = {3, 0};
  model.mutable_trees() = {{body_leaf}, {title_leaf}};
  ASSERT_OK_AND_ASSIGN(const Prediction p, model.Predict(toy.inputs[0]));
  EXPECT_EQ(p.label, LayoutLabel::kTitle);
  EXPECT_EQ(p.confidence, 0.5);
}

TEST(ForestTest, TreeOrderDoesNotChangePredictions) {
  const Toy toy = SeparableToy(150, 8);
  ForestParams params;
  params.n_trees = 15;
  params.features_per_split = 17;
  ASSERT_OK_AND_ASSIGN(const ForestModel model,
                       ForestModel::Train(toy.inputs, toy.labels, params, {}));
  ForestModel shuffled = model;
  std::mt19937_64 rng(1);
  std::shuffle(shuffled.mutable_trees().begin(),
               shuffled.mutable_trees().end(), rng);
  for (const ClassifierInput& in : SeparableToy(50, 9).inputs) {
    ASSERT_OK_AND_ASSIGN(const Prediction a, model.Predict(in));
    ASSERT_OK_AND_ASSIGN(const Prediction b, shuffled.Predict(in));
    EXPECT_EQ(a.label, b.label);
    EXPECT_EQ(a.confidence, b.confidence);
  }
}

TEST(ForestTest, DepthIsBounded) {
  // Noisy labels force deep trees.
  Toy toy = SeparableToy(300, 10);
  std::mt19937_64 rng(2);
  for (LayoutLabel& l : toy.labels) {
    if (rng() % 3 == 0) l = LayoutLabel::kSummary;
  }
  ForestParams params;
  params.n_trees = 5;
  params.max_depth = 3;
  ASSERT_OK_AND_ASSIGN(const ForestModel shallow,
                       ForestModel::Train(toy.inputs, toy.labels, params, {}));
  EXPECT_LE(shallow.Depth(), 3);
  params.max_depth = 1000;
  ASSERT_OK_AND_ASSIGN(const ForestModel deep,
                       ForestModel::Train(toy.inputs, toy.labels, params, {}));
  EXPECT_GT(deep.Depth(), 3);
  EXPECT_LE(deep.Depth(), 1000);
  EXPECT_EQ(ForestParams().max_depth, 1000);
  EXPECT_EQ(ForestParams().n_trees, 100);
}

TEST(ForestTest, SerializeRoundTripIsBitStable) {
  const Toy toy = SeparableToy(100, 11);
  ForestParams params;
  params.n_trees = 8;
  TrainingMetadata meta{"src", {"doc-a", "doc-b"}};
  ASSERT_OK_AND_ASSIGN(
      const ForestModel model,
      ForestModel::Train(toy.inputs, toy.labels, params, meta));
  const std::string text = model.Serialize();
  ASSERT_OK_AND_ASSIGN(const ForestModel back, ForestModel::Parse(text));
  EXPECT_EQ(back, model);
  EXPECT_EQ(back.Serialize(), text);
  EXPECT_EQ(back.metadata(), meta);
  EXPECT_FALSE(ForestModel::Parse("garbage").ok());
  EXPECT_FALSE(ForestModel::Parse(text.substr(0, text.size() / 2)).ok());
}

TEST(SplitMix64Test, KnownSequence) {
  // Reference values of the published SplitMix64 generator for seed 0.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.Next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.Next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.Next(), 0x06c45d188009454fULL);
}

TEST(SplitMix64Test, BelowAndUniformRanges) {
  SplitMix64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(rng.Below(7), 7u);
    const double u = rng.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace dla::labeler
