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

// Random forest of Gini decision trees over classifier inputs.

#ifndef DLA_LABELER_FOREST_H_
#define DLA_LABELER_FOREST_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/core/layout.h"
#include "dla/features/features.h"

namespace dla::labeler {

struct ForestParams {
  int n_trees = 100;
  int max_depth = 1000;
  uint64_t seed = 1;
  // Candidate features per split; 0 means ceil(sqrt(n_features)).
  int features_per_split = 0;
};

struct TrainingMetadata {
  std::string source_id;
  std::vector<std::string> training_docs;

  friend bool operator==(const TrainingMetadata&,
                         const TrainingMetadata&) = default;
};

struct Prediction {
  LayoutLabel label = LayoutLabel::kBody;
  double confidence = 0.0;  // Fraction of trees voting for `label`.
};

// SplitMix64 generator; small, fast and identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  uint64_t Next();
  // Uniform in [0, n).
  uint64_t Below(uint64_t n);
  // Uniform in [0, 1).
  double Uniform();

 private:
  uint64_t state_;
};

class ForestModel {
 public:
  struct Node {
    int feature = -1;  // -1 for leaves.
    double threshold = 0.0;  // Go left when value <= threshold.
    int left = -1;
    int right = -1;
    std::vector<int> counts;  // Per class, leaves only.

    friend bool operator==(const Node&, const Node&) = default;
  };
  using Tree = std::vector<Node>;  // Root at index 0.

  // Fails on empty input or mismatched sizes. A single-class training set
  // yields a constant model and a warning.
  static absl::StatusOr<ForestModel> Train(
      std::span<const features::ClassifierInput> inputs,
      std::span<const LayoutLabel> labels, const ForestParams& params,
      TrainingMetadata metadata, std::vector<std::string>* warnings = nullptr);

  // Majority vote; ties go to the lower label code. Fails when the input was
  // produced by a different feature version.
  absl::StatusOr<Prediction> Predict(
      const features::ClassifierInput& input) const;

  std::string Serialize() const;
  static absl::StatusOr<ForestModel> Parse(std::string_view text);

  const std::vector<LayoutLabel>& classes() const { return classes_; }
  const std::vector<Tree>& trees() const { return trees_; }
  std::vector<Tree>& mutable_trees() { return trees_; }
  const TrainingMetadata& metadata() const { return metadata_; }
  uint64_t seed() const { return seed_; }
  int feature_version() const { return feature_version_; }
  int max_depth() const { return max_depth_; }
  // Deepest root-to-leaf path over all trees (root depth 0).
  int Depth() const;

  friend bool operator==(const ForestModel&, const ForestModel&) = default;

 private:
  std::vector<LayoutLabel> classes_;  // Sorted by code.
  std::vector<Tree> trees_;
  TrainingMetadata metadata_;
  uint64_t seed_ = 0;
  int feature_version_ = features::kFeatureVersion;
  int n_features_ = features::kNumClassifierFeatures;
  int max_depth_ = 1000;
};

}  // namespace dla::labeler

#endif  // DLA_LABELER_FOREST_H_
