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
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "dla/core/strings.h"

namespace dla::labeler {
namespace {

using features::ClassifierInput;

constexpr char kMagic[] = "dla-forest v1";

std::string HexFloat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

int ArgMax(const std::vector<int>& counts) {
  int best = 0;
  for (size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = static_cast<int>(i);
  }
  return best;
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double score = std::numeric_limits<double>::infinity();
};

class TreeBuilder {
 public:
  TreeBuilder(std::span<const ClassifierInput> x, const std::vector<int>& y,
              int n_classes, int max_depth, int k, SplitMix64* rng)
      : x_(x), y_(y), n_classes_(n_classes), max_depth_(max_depth), k_(k),
        rng_(rng) {}

  ForestModel::Tree Build(std::vector<int> sample) {
    ForestModel::Tree tree;
    struct Work {
      int node;
      std::vector<int> idx;
      int depth;
    };
    tree.emplace_back();
    std::vector<Work> stack;
    stack.push_back({0, std::move(sample), 0});
    while (!stack.empty()) {
      Work w = std::move(stack.back());
      stack.pop_back();
      std::vector<int> counts(n_classes_, 0);
      for (int i : w.idx) ++counts[y_[i]];
      const bool pure =
          std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }) <= 1;
      Split split;
      if (!pure && w.depth < max_depth_ && w.idx.size() >= 2) {
        split = FindSplit(w.idx, counts);
      }
      if (split.feature < 0) {
        tree[w.node].counts = std::move(counts);
        continue;
      }
      std::vector<int> left, right;
      for (int i : w.idx) {
        (x_[i].values[split.feature] <= split.threshold ? left : right)
            .push_back(i);
      }
      const int l = static_cast<int>(tree.size());
      tree.emplace_back();
      tree.emplace_back();
      tree[w.node].feature = split.feature;
      tree[w.node].threshold = split.threshold;
      tree[w.node].left = l;
      tree[w.node].right = l + 1;
      // Right first so the left subtree is expanded first.
      stack.push_back({l + 1, std::move(right), w.depth + 1});
      stack.push_back({l, std::move(left), w.depth + 1});
    }
    return tree;
  }

 private:
  Split FindSplit(const std::vector<int>& idx, const std::vector<int>& total) {
    const int d = features::kNumClassifierFeatures;
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    for (int i = d - 1; i > 0; --i) {
      const int j = static_cast<int>(rng_->Below(i + 1));
      std::swap(order[i], order[j]);
    }
    Split best;
    for (int pos = 0; pos < d; ++pos) {
      // Sampled features first; the rest only while nothing splits.
      if (pos >= k_ && best.feature >= 0) break;
      EvaluateFeature(order[pos], idx, total, &best);
    }
    return best;
  }

  void EvaluateFeature(int f, const std::vector<int>& idx,
                       const std::vector<int>& total, Split* best) {
    std::vector<std::pair<double, int>> v;
    v.reserve(idx.size());
    for (int i : idx) v.emplace_back(x_[i].values[f], y_[i]);
    std::sort(v.begin(), v.end());
    const int64_t n = static_cast<int64_t>(v.size());
    std::vector<int64_t> lc(n_classes_, 0);
    std::vector<int64_t> rc(total.begin(), total.end());
    int64_t sl = 0, sr = 0;
    for (int64_t c : rc) sr += c * c;
    for (int64_t i = 0; i + 1 < n; ++i) {
      const int c = v[i].second;
      sl += 2 * lc[c] + 1;
      sr -= 2 * rc[c] - 1;
      ++lc[c];
      --rc[c];
      if (v[i].first == v[i + 1].first) continue;
      const double nl = static_cast<double>(i + 1);
      const double nr = static_cast<double>(n - i - 1);
      // Weighted Gini: nl * (1 - sl / nl^2) + nr * (1 - sr / nr^2).
      const double score = (nl - sl / nl) + (nr - sr / nr);
      if (score < best->score) {
        double threshold = v[i].first + (v[i + 1].first - v[i].first) / 2.0;
        if (!(threshold < v[i + 1].first)) threshold = v[i].first;
        best->score = score;
        best->feature = f;
        best->threshold = threshold;
      }
    }
  }

  std::span<const ClassifierInput> x_;
  const std::vector<int>& y_;
  int n_classes_;
  int max_depth_;
  int k_;
  SplitMix64* rng_;
};

absl::Status ParseError(int line, std::string_view msg) {
  return absl::DataLossError(
      absl::StrCat("model line ", line, ": ", ToAbsl(msg)));
}

}  // namespace

uint64_t SplitMix64::Next() {
  uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t SplitMix64::Below(uint64_t n) { return n == 0 ? 0 : Next() % n; }

double SplitMix64::Uniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

absl::StatusOr<ForestModel> ForestModel::Train(
    std::span<const ClassifierInput> inputs, std::span<const LayoutLabel> labels,
    const ForestParams& params, TrainingMetadata metadata,
    std::vector<std::string>* warnings) {
  if (inputs.empty()) return absl::InvalidArgumentError("empty training set");
  if (inputs.size() != labels.size()) {
    return absl::InvalidArgumentError("inputs and labels differ in size");
  }
  if (params.n_trees < 1 || params.max_depth < 0) {
    return absl::InvalidArgumentError("bad forest parameters");
  }
  ForestModel model;
  model.metadata_ = std::move(metadata);
  model.seed_ = params.seed;
  model.max_depth_ = params.max_depth;
  for (const ClassifierInput& in : inputs) {
    if (in.version != features::kFeatureVersion) {
      return absl::FailedPreconditionError("training input feature version");
    }
  }
  for (LayoutLabel l : labels) {
    if (std::find(model.classes_.begin(), model.classes_.end(), l) ==
        model.classes_.end()) {
      model.classes_.push_back(l);
    }
  }
  std::sort(model.classes_.begin(), model.classes_.end(),
            [](LayoutLabel a, LayoutLabel b) { return Code(a) < Code(b); });
  if (model.classes_.size() == 1 && warnings != nullptr) {
    warnings->push_back(absl::StrCat(
        "single class ", ToAbsl(LayoutLabelName(model.classes_[0])),
        " in training data; model is constant"));
  }
  std::vector<int> y(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    y[i] = static_cast<int>(
        std::find(model.classes_.begin(), model.classes_.end(), labels[i]) -
        model.classes_.begin());
  }
  const int k = params.features_per_split > 0
                    ? params.features_per_split
                    : static_cast<int>(std::ceil(std::sqrt(
                          static_cast<double>(features::kNumClassifierFeatures))));
  const int n = static_cast<int>(inputs.size());
  for (int t = 0; t < params.n_trees; ++t) {
    SplitMix64 rng(params.seed ^ (0xD1B54A32D192ED03ULL * (t + 1)));
    std::vector<int> sample(n);
    for (int& s : sample) s = static_cast<int>(rng.Below(n));
    TreeBuilder builder(inputs, y, static_cast<int>(model.classes_.size()),
                        params.max_depth, k, &rng);
    model.trees_.push_back(builder.Build(std::move(sample)));
  }
  return model;
}

absl::StatusOr<Prediction> ForestModel::Predict(
    const ClassifierInput& input) const {
  if (input.version != feature_version_) {
    return absl::FailedPreconditionError(
        absl::StrCat("stale model: feature version ", feature_version_,
                     " but input has version ", input.version));
  }
  if (trees_.empty() || classes_.empty()) {
    return absl::FailedPreconditionError("empty model");
  }
  std::vector<int> votes(classes_.size(), 0);
  for (const Tree& tree : trees_) {
    int node = 0;
    while (tree[node].feature >= 0) {
      node = input.values[tree[node].feature] <= tree[node].threshold
                 ? tree[node].left
                 : tree[node].right;
    }
    ++votes[ArgMax(tree[node].counts)];
  }
  const int best = ArgMax(votes);
  return Prediction{classes_[best],
                    static_cast<double>(votes[best]) / trees_.size()};
}

int ForestModel::Depth() const {
  int deepest = 0;
  for (const Tree& tree : trees_) {
    std::vector<std::pair<int, int>> stack = {{0, 0}};
    while (!stack.empty()) {
      const auto [node, depth] = stack.back();
      stack.pop_back();
      deepest = std::max(deepest, depth);
      if (tree[node].feature >= 0) {
        stack.push_back({tree[node].left, depth + 1});
        stack.push_back({tree[node].right, depth + 1});
      }
    }
  }
  return deepest;
}

std::string ForestModel::Serialize() const {
  std::string out = absl::StrCat(kMagic, "\n");
  absl::StrAppend(&out, "source_id ", metadata_.source_id, "\n");
  absl::StrAppend(&out, "seed ", seed_, "\n");
  absl::StrAppend(&out, "feature_version ", feature_version_, "\n");
  absl::StrAppend(&out, "n_features ", n_features_, "\n");
  absl::StrAppend(&out, "max_depth ", max_depth_, "\n");
  std::vector<int> codes;
  for (LayoutLabel l : classes_) codes.push_back(Code(l));
  absl::StrAppend(&out, "classes ", absl::StrJoin(codes, " "), "\n");
  absl::StrAppend(&out, "training_docs ", metadata_.training_docs.size());
  for (const std::string& d : metadata_.training_docs) {
    absl::StrAppend(&out, " ", d);
  }
  out.push_back('\n');
  absl::StrAppend(&out, "trees ", trees_.size(), "\n");
  for (size_t t = 0; t < trees_.size(); ++t) {
    absl::StrAppend(&out, "tree ", t, " ", trees_[t].size(), "\n");
    for (const Node& node : trees_[t]) {
      if (node.feature >= 0) {
        absl::StrAppend(&out, "N ", node.feature, " ", HexFloat(node.threshold),
                        " ", node.left, " ", node.right, "\n");
      } else {
        absl::StrAppend(&out, "L ", absl::StrJoin(node.counts, " "), "\n");
      }
    }
  }
  return out;
}

absl::StatusOr<ForestModel> ForestModel::Parse(std::string_view text) {
  std::vector<absl::string_view> lines = absl::StrSplit(ToAbsl(text), '\n');
  size_t li = 0;
  auto next = [&](std::vector<absl::string_view>* fields) -> bool {
    while (li < lines.size() && lines[li].empty()) ++li;
    if (li >= lines.size()) return false;
    *fields = absl::StrSplit(lines[li++], ' ', absl::SkipEmpty());
    return true;
  };
  auto line = [&]() { return static_cast<int>(li); };

  std::vector<absl::string_view> f;
  if (li >= lines.size() || lines[li] != kMagic) {
    return ParseError(1, "not a dla-forest v1 model");
  }
  ++li;
  ForestModel model;
  auto expect = [&](std::string_view key, size_t min_fields) -> absl::Status {
    if (!next(&f) || f.empty() || f[0] != ToAbsl(key) || f.size() < min_fields) {
      return ParseError(line(), absl::StrCat("expected ", ToAbsl(key)));
    }
    return absl::OkStatus();
  };
  if (auto s = expect("source_id", 1); !s.ok()) return s;
  model.metadata_.source_id = f.size() > 1 ? std::string(f[1]) : "";
  if (auto s = expect("seed", 2); !s.ok()) return s;
  if (!absl::SimpleAtoi(f[1], &model.seed_)) return ParseError(line(), "seed");
  if (auto s = expect("feature_version", 2); !s.ok()) return s;
  if (!absl::SimpleAtoi(f[1], &model.feature_version_)) {
    return ParseError(line(), "feature_version");
  }
  if (auto s = expect("n_features", 2); !s.ok()) return s;
  if (!absl::SimpleAtoi(f[1], &model.n_features_) ||
      model.n_features_ != features::kNumClassifierFeatures) {
    return ParseError(line(), "n_features");
  }
  if (auto s = expect("max_depth", 2); !s.ok()) return s;
  if (!absl::SimpleAtoi(f[1], &model.max_depth_)) {
    return ParseError(line(), "max_depth");
  }
  if (auto s = expect("classes", 2); !s.ok()) return s;
  for (size_t i = 1; i < f.size(); ++i) {
    int code = 0;
    if (!absl::SimpleAtoi(f[i], &code)) return ParseError(line(), "classes");
    auto label = LayoutLabelFromCode(code);
    if (!label.ok()) return ParseError(line(), "classes");
    model.classes_.push_back(*label);
  }
  if (auto s = expect("training_docs", 2); !s.ok()) return s;
  size_t n_docs = 0;
  if (!absl::SimpleAtoi(f[1], &n_docs) || f.size() != n_docs + 2) {
    return ParseError(line(), "training_docs");
  }
  for (size_t i = 2; i < f.size(); ++i) {
    model.metadata_.training_docs.emplace_back(f[i]);
  }
  if (auto s = expect("trees", 2); !s.ok()) return s;
  size_t n_trees = 0;
  if (!absl::SimpleAtoi(f[1], &n_trees)) return ParseError(line(), "trees");
  const int n_classes = static_cast<int>(model.classes_.size());
  for (size_t t = 0; t < n_trees; ++t) {
    if (auto s = expect("tree", 3); !s.ok()) return s;
    size_t n_nodes = 0;
    if (!absl::SimpleAtoi(f[2], &n_nodes) || n_nodes == 0) {
      return ParseError(line(), "tree size");
    }
    Tree tree(n_nodes);
    for (size_t ni = 0; ni < n_nodes; ++ni) {
      Node& node = tree[ni];
      if (!next(&f) || f.empty()) return ParseError(line(), "truncated tree");
      if (f[0] == "N" && f.size() == 5) {
        char* end = nullptr;
        const std::string thr(f[2]);
        node.threshold = std::strtod(thr.c_str(), &end);
        if (!absl::SimpleAtoi(f[1], &node.feature) ||
            !absl::SimpleAtoi(f[3], &node.left) ||
            !absl::SimpleAtoi(f[4], &node.right) || *end != '\0' ||
            node.feature < 0 || node.feature >= model.n_features_ ||
            node.left <= static_cast<int>(ni) ||
            node.right <= static_cast<int>(ni) ||
            node.left >= static_cast<int>(n_nodes) ||
            node.right >= static_cast<int>(n_nodes)) {
          return ParseError(line(), "bad split node");
        }
      } else if (f[0] == "L" && static_cast<int>(f.size()) == n_classes + 1) {
        node.counts.resize(n_classes);
        for (int c = 0; c < n_classes; ++c) {
          if (!absl::SimpleAtoi(f[c + 1], &node.counts[c])) {
            return ParseError(line(), "bad leaf");
          }
        }
      } else {
        return ParseError(line(), "bad node");
      }
    }
    model.trees_.push_back(std::move(tree));
  }
  return model;
}

}  // namespace dla::labeler
