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

#include "dla/eval/protocol.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dla/core/strings.h"

namespace dla::eval {
namespace {

int ClassIndex(LayoutLabel l) {
  return Code(l) - Code(LayoutLabel::kIdentifier);
}

nlohmann::json MeanStdJson(const MeanStd& m) {
  return {{"mean", m.mean}, {"std", m.std}, {"repeats", m.count}};
}

absl::StatusOr<RepeatLog> RunRepeat(
    std::string_view source_id,
    std::span<const labeler::CuratedDocument> documents,
    const ProtocolOptions& options, int repeat) {
  RepeatLog log;
  log.repeat = repeat;
  labeler::SplitMix64 seeder(options.seed);
  for (int i = 0; i <= repeat; ++i) log.seed = seeder.Next();

  std::vector<int> order(documents.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  labeler::SplitMix64 rng(log.seed);
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.Below(i)]);
  }
  const int n = static_cast<int>(documents.size());
  const int n_train = std::clamp(
      static_cast<int>(std::lround(options.train_fraction * n)), 1, n - 1);
  std::vector<const labeler::CuratedDocument*> train;
  std::vector<const labeler::CuratedDocument*> test;
  for (int i = 0; i < n; ++i) {
    (i < n_train ? train : test).push_back(&documents[order[i]]);
  }
  auto by_id = [](const labeler::CuratedDocument* a,
                  const labeler::CuratedDocument* b) {
    return a->doc_id < b->doc_id;
  };
  std::sort(train.begin(), train.end(), by_id);
  std::sort(test.begin(), test.end(), by_id);

  features::FontDictionary fonts;
  labeler::TrainingMetadata meta;
  meta.source_id = std::string(source_id);
  for (const auto* d : train) {
    log.train_docs.push_back(d->doc_id);
    meta.training_docs.push_back(d->doc_id);
    for (const labeler::CuratedBlock& b : d->blocks) {
      if (b.fv.text) fonts.Register(b.fv.text->f16);
    }
  }
  std::vector<features::ClassifierInput> inputs;
  std::vector<LayoutLabel> labels;
  for (const auto* d : train) {
    for (const labeler::CuratedBlock& b : d->blocks) {
      auto in = features::NormalizeForClassifier(b.fv, b.page, fonts);
      if (!in.ok()) return in.status();
      inputs.push_back(*std::move(in));
      labels.push_back(b.label);
    }
  }
  labeler::ForestParams params = options.forest;
  params.seed = log.seed;
  auto model = labeler::ForestModel::Train(inputs, labels, params, meta);
  if (!model.ok()) return model.status();

  for (const auto* d : test) {
    log.test_docs.push_back(d->doc_id);
    for (const labeler::CuratedBlock& b : d->blocks) {
      auto in = features::NormalizeForClassifier(b.fv, b.page, fonts);
      if (!in.ok()) return in.status();
      auto pred = model->Predict(*in);
      if (!pred.ok()) return pred.status();
      const int c = ClassIndex(b.label);
      ++log.test_blocks;
      ++log.support[c];
      if (pred->label == b.label) {
        ++log.correct;
        ++log.class_correct[c];
      }
    }
  }
  if (log.test_blocks == 0) {
    return absl::FailedPreconditionError(
        absl::StrCat("repeat ", repeat, ": test split has no text blocks"));
  }
  log.overall = 100.0 * log.correct / log.test_blocks;
  for (int c = 0; c < 4; ++c) {
    if (log.support[c] > 0) {
      log.per_class[c] = 100.0 * log.class_correct[c] / log.support[c];
    }
  }
  return log;
}

}  // namespace

MeanStd Summarize(std::span<const double> values) {
  MeanStd m;
  m.count = static_cast<int>(values.size());
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / values.size();
  double sq = 0.0;
  for (double v : values) sq += (v - m.mean) * (v - m.mean);
  m.std = std::sqrt(sq / values.size());
  return m;
}

std::string FormatMeanStd(const MeanStd& m) {
  if (m.count == 0) return "n/a";
  return absl::StrFormat("%.2f_%.2f", m.mean, m.std);
}

absl::StatusOr<EvalReport> RunProtocol(
    std::string_view source_id,
    std::span<const labeler::CuratedDocument> documents,
    const ProtocolOptions& options) {
  if (static_cast<int>(documents.size()) < kMinProtocolDocuments) {
    return absl::FailedPreconditionError(absl::StrCat(
        "source '", ToAbsl(source_id), "' has ", documents.size(),
        " validated documents; the protocol needs at least ",
        kMinProtocolDocuments));
  }
  if (options.repeats < 1) {
    return absl::InvalidArgumentError("repeats must be at least 1");
  }
  if (!(options.train_fraction > 0.0 && options.train_fraction < 1.0)) {
    return absl::InvalidArgumentError("train_fraction must be in (0, 1)");
  }
  std::vector<absl::StatusOr<RepeatLog>> results(
      options.repeats, absl::UnknownError("not run"));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int r = next++; r < options.repeats; r = next++) {
      results[r] = RunRepeat(source_id, documents, options, r);
    }
  };
  std::vector<std::thread> threads;
  for (int t = 1; t < std::clamp(options.workers, 1, options.repeats); ++t) {
    threads.emplace_back(work);
  }
  work();
  for (std::thread& t : threads) t.join();

  EvalReport report;
  report.source_id = std::string(source_id);
  report.repeats = options.repeats;
  report.train_fraction = options.train_fraction;
  report.seed = options.seed;
  std::vector<double> overall;
  std::array<std::vector<double>, 4> per_class;
  for (auto& r : results) {
    if (!r.ok()) return r.status();
    overall.push_back(r->overall);
    for (int c = 0; c < 4; ++c) {
      report.support[c] += r->support[c];
      if (r->per_class[c]) per_class[c].push_back(*r->per_class[c]);
    }
    report.logs.push_back(*std::move(r));
  }
  report.overall = Summarize(overall);
  for (int c = 0; c < 4; ++c) report.per_class[c] = Summarize(per_class[c]);
  return report;
}

nlohmann::json EvalReport::ToJson() const {
  nlohmann::json classes = nlohmann::json::object();
  for (int c = 0; c < 4; ++c) {
    nlohmann::json j = MeanStdJson(per_class[c]);
    j["support"] = support[c];
    classes[kClassColumns[c]] = std::move(j);
  }
  nlohmann::json logs = nlohmann::json::array();
  for (const RepeatLog& l : this->logs) {
    nlohmann::json pc = nlohmann::json::object();
    nlohmann::json sup = nlohmann::json::object();
    for (int c = 0; c < 4; ++c) {
      pc[kClassColumns[c]] =
          l.per_class[c] ? nlohmann::json(*l.per_class[c]) : nlohmann::json();
      sup[kClassColumns[c]] = l.support[c];
    }
    logs.push_back({{"repeat", l.repeat},
                    {"seed", l.seed},
                    {"train_docs", l.train_docs},
                    {"test_docs", l.test_docs},
                    {"test_blocks", l.test_blocks},
                    {"correct", l.correct},
                    {"overall", l.overall},
                    {"per_class", std::move(pc)},
                    {"support", std::move(sup)}});
  }
  return {{"source_id", source_id},
          {"repeats", repeats},
          {"train_fraction", train_fraction},
          {"seed", seed},
          {"overall", MeanStdJson(overall)},
          {"per_class", std::move(classes)},
          {"table", ToTable()},
          {"splits", std::move(logs)}};
}

std::string EvalReport::ToTable() const {
  return ReportsTable(std::span<const EvalReport>(this, 1));
}

std::string ReportsTable(std::span<const EvalReport> reports) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"Source", "Overall", "ID", "Title", "Summary", "Body"});
  for (const EvalReport& r : reports) {
    std::vector<std::string> row = {r.source_id, FormatMeanStd(r.overall)};
    for (int c = 0; c < 4; ++c) row.push_back(FormatMeanStd(r.per_class[c]));
    grid.push_back(std::move(row));
  }
  std::vector<size_t> width(grid[0].size());
  for (const auto& row : grid) {
    for (size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::string out;
  for (size_t i = 0; i < grid.size(); ++i) {
    std::string line;
    for (size_t c = 0; c < grid[i].size(); ++c) {
      if (c > 0) line += " | ";
      const std::string pad(width[c] - grid[i][c].size(), ' ');
      line += c == 0 ? grid[i][c] + pad : pad + grid[i][c];
    }
    out += line + "\n";
    if (i == 0) {
      std::string rule;
      for (size_t c = 0; c < width.size(); ++c) {
        if (c > 0) rule += "-+-";
        rule += std::string(width[c], '-');
      }
      out += rule + "\n";
    }
  }
  return out;
}

absl::StatusOr<std::vector<labeler::CuratedDocument>> LoadValidatedDocuments(
    const corpus::CorpusStore& store, std::string_view source_id) {
  auto manifests = store.ListManifests(std::string(source_id));
  if (!manifests.ok()) return manifests.status();
  std::vector<labeler::CuratedDocument> out;
  for (const corpus::DocumentManifest& m : *manifests) {
    if (m.status != corpus::ValidationStatus::kValidated) continue;
    auto layout = store.ReadLayout(m.doc_id);
    if (!layout.ok()) return layout.status();
    labeler::CuratedDocument doc;
    doc.doc_id = m.doc_id;
    doc.page_count = static_cast<int>(layout->pages.size());
    for (const corpus::LayoutRecord& r : layout->records) {
      if (r.block.kind != BlockKind::kText) continue;
      doc.blocks.push_back({r.fv, r.page, r.block.label, r.block.label_origin,
                            r.confidence});
    }
    out.push_back(std::move(doc));
  }
  return out;
}

}  // namespace dla::eval
