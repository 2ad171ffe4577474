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

// A simulated supervisor that reviews ingested synthetic documents through
// the curator: every text block matched to a generator manifest block gets
// the manifest label, then the document is validated.

#ifndef DLA_EVAL_SIMULATE_H_
#define DLA_EVAL_SIMULATE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/eval/synth.h"
#include "dla/service/curator.h"
#include "json.hpp"

namespace dla::eval {

// Maps doc_id to its generator manifest through the file name of the
// manifest's origin. Documents without a manifest are left out.
absl::StatusOr<std::map<std::string, SynthManifest>> MatchTruth(
    const corpus::CorpusStore& store, std::string_view source_id,
    const std::vector<SynthManifest>& manifests);

struct SimulationOptions {
  // Documents held out from review and used to compare labelers.
  double test_fraction = 0.2;
  uint64_t seed = 1;
  // Stop after this many validations; -1 reviews every training document.
  int max_reviews = -1;
};

struct ReviewStep {
  std::string doc_id;
  int pages = 0;
  int corrections = 0;
  int validated_pages = 0;  // After this step.
  std::string mode;         // After this step.
  int model_version = 0;
};

struct LabelerScore {
  int blocks = 0;
  int correct = 0;
  double Accuracy() const {
    return blocks == 0 ? 0.0 : 100.0 * correct / blocks;
  }
};

struct SimulationResult {
  std::string source_id;
  std::vector<ReviewStep> steps;
  std::vector<std::string> test_docs;
  // Index into `steps` of the first step in model mode, or -1.
  int switch_step = -1;
  // Held-out text blocks scored with the heuristic rules and with the labels
  // the curation loop left on them.
  LabelerScore heuristic;
  LabelerScore model;

  nlohmann::json ToJson() const;
};

// Requires a curator in synchronous mode so that each validation's curation
// step completes before the next review.
absl::StatusOr<SimulationResult> SimulateReview(
    service::Curator* curator, std::string_view source_id,
    const std::map<std::string, SynthManifest>& truth,
    const SimulationOptions& options = {});

}  // namespace dla::eval

#endif  // DLA_EVAL_SIMULATE_H_
