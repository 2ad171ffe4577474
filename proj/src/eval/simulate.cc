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

#include "dla/eval/simulate.h"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "absl/strings/str_cat.h"
#include "dla/core/strings.h"
#include "dla/eval/score.h"
#include "dla/labeler/forest.h"

namespace dla::eval {

absl::StatusOr<std::map<std::string, SynthManifest>> MatchTruth(
    const corpus::CorpusStore& store, std::string_view source_id,
    const std::vector<SynthManifest>& manifests) {
  std::map<std::string, const SynthManifest*> by_file;
  for (const SynthManifest& m : manifests) by_file[m.file_name] = &m;
  auto docs = store.ListManifests(std::string(source_id));
  if (!docs.ok()) return docs.status();
  std::map<std::string, SynthManifest> out;
  for (const corpus::DocumentManifest& d : *docs) {
    const std::string name =
        std::filesystem::path(d.origin).filename().string();
    auto it = by_file.find(name);
    if (it != by_file.end()) out.emplace(d.doc_id, *it->second);
  }
  return out;
}

nlohmann::json SimulationResult::ToJson() const {
  nlohmann::json steps_json = nlohmann::json::array();
  for (const ReviewStep& s : steps) {
    steps_json.push_back({{"doc_id", s.doc_id},
                          {"pages", s.pages},
                          {"corrections", s.corrections},
                          {"validated_pages", s.validated_pages},
                          {"mode", s.mode},
                          {"model_version", s.model_version}});
  }
  return {{"source_id", source_id},
          {"steps", std::move(steps_json)},
          {"switch_step", switch_step},
          {"test_docs", test_docs},
          {"heuristic", {{"blocks", heuristic.blocks},
                         {"correct", heuristic.correct},
                         {"accuracy", heuristic.Accuracy()}}},
          {"model", {{"blocks", model.blocks},
                     {"correct", model.correct},
                     {"accuracy", model.Accuracy()}}}};
}

absl::StatusOr<SimulationResult> SimulateReview(
    service::Curator* curator, std::string_view source_id,
    const std::map<std::string, SynthManifest>& truth,
    const SimulationOptions& options) {
  corpus::CorpusStore* store = curator->store();
  const std::string source(source_id);
  SimulationResult result;
  result.source_id = source;

  std::vector<std::string> ids;
  for (const auto& [doc_id, m] : truth) ids.push_back(doc_id);
  labeler::SplitMix64 rng(options.seed);
  for (size_t i = ids.size(); i > 1; --i) {
    std::swap(ids[i - 1], ids[rng.Below(i)]);
  }
  const size_t n_test = static_cast<size_t>(
      std::lround(options.test_fraction * static_cast<double>(ids.size())));
  std::vector<std::string> review(ids.begin(), ids.end() - n_test);
  result.test_docs.assign(ids.end() - n_test, ids.end());
  std::sort(result.test_docs.begin(), result.test_docs.end());

  for (const std::string& doc_id : review) {
    if (options.max_reviews >= 0 &&
        static_cast<int>(result.steps.size()) >= options.max_reviews) {
      break;
    }
    auto layout = store->ReadLayout(doc_id);
    if (!layout.ok()) return layout.status();
    const SynthManifest& t = truth.at(doc_id);
    ReviewStep step;
    step.doc_id = doc_id;
    step.pages = static_cast<int>(layout->pages.size());
    for (const auto& [ti, ri] : MatchBlocks(t, *layout)) {
      const corpus::LayoutRecord& r = layout->records[ri];
      if (r.block.kind != BlockKind::kText) continue;
      if (r.block.label == t.blocks[ti].label) continue;
      auto set = curator->SetLabel(
          doc_id, r.block.block_id,
          service::LabelAction::Set(t.blocks[ti].label));
      if (!set.ok()) return set.status();
      ++step.corrections;
    }
    auto validated = curator->Validate(doc_id);
    if (!validated.ok()) return validated.status();
    auto status = curator->SourceStatus(source);
    if (!status.ok()) return status.status();
    if (!(*status)["last_error"].is_null()) {
      return absl::InternalError(absl::StrCat(
          "curation step failed: ",
          (*status)["last_error"].get<std::string>()));
    }
    step.validated_pages = (*status)["validated_pages"].get<int>();
    step.mode = (*status)["mode"].get<std::string>();
    step.model_version = (*status)["model_version"].get<int>();
    if (result.switch_step < 0 && step.mode == "model") {
      result.switch_step = static_cast<int>(result.steps.size());
    }
    result.steps.push_back(std::move(step));
  }

  auto rules = store->LoadRules(source);
  if (!rules.ok()) return rules.status();
  for (const std::string& doc_id : result.test_docs) {
    auto layout = store->ReadLayout(doc_id);
    if (!layout.ok()) return layout.status();
    const SynthManifest& t = truth.at(doc_id);
    for (const auto& [ti, ri] : MatchBlocks(t, *layout)) {
      const corpus::LayoutRecord& r = layout->records[ri];
      if (r.block.kind != BlockKind::kText) continue;
      const LayoutLabel want = t.blocks[ti].label;
      ++result.heuristic.blocks;
      ++result.model.blocks;
      if (labeler::ApplyRules(*rules, r.fv) == want) ++result.heuristic.correct;
      if (r.block.label == want) ++result.model.correct;
    }
  }
  return result;
}

}  // namespace dla::eval
