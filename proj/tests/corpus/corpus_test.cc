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

#include <algorithm>
#include <fstream>
#include <map>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "dla/core/strings.h"
#include "dla/corpus/fetch.h"
#include "dla/corpus/ingest.h"
#include "dla/corpus/overlay.h"
#include "dla/corpus/stats.h"
#include "dla/corpus/store.h"
#include "dla/eval/synth.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "tests/testing/test_util.h"

namespace dla::corpus {
namespace {

using ::dla::testing::ScopedTempDir;
using ::testing::HasSubstr;

class CorpusTest : public ::testing::Test {
 protected:
  void SetUp() override {
    auto store = CorpusStore::Open(dir_.path() / "corpus");
    ASSERT_TRUE(store.ok()) << store.status();
    store_ = *std::move(store);
  }

  void AddSource(const eval::SynthTemplate& t) {
    ASSERT_OK(store_->PutSource(eval::TemplateProfile(t)));
    ASSERT_OK(store_->PutRules(t.source_id, eval::StarterRules(t)));
  }

  absl::StatusOr<IngestResult> IngestSynth(const eval::SynthTemplate& t,
                                           const eval::SynthDocument& doc) {
    auto ingestor = Ingestor::Create(store_.get(), t.source_id);
    if (!ingestor.ok()) return ingestor.status();
    return (*ingestor)->Ingest(
        {doc.pdf, doc.manifest.file_name, doc.manifest.file_name});
  }

  ScopedTempDir dir_;
  std::unique_ptr<CorpusStore> store_;
};

TEST_F(CorpusTest, LayoutRoundTripsThroughStore) {
  const eval::SynthTemplate t = eval::CleanTemplate();
  AddSource(t);
  const eval::SynthDocument doc = eval::GenerateDocument(t, 0, {.seed = 3});
  ASSERT_OK_AND_ASSIGN(const IngestResult r, IngestSynth(t, doc));
  ASSERT_EQ(r.outcome, IngestOutcome::kIngested);
  ASSERT_OK_AND_ASSIGN(DocumentLayout layout, store_->ReadLayout(r.doc_id));
  EXPECT_FALSE(layout.records.empty());
  EXPECT_EQ(layout.pages.size(), static_cast<size_t>(doc.manifest.page_count));

  // A payload above the inline limit goes through a sidecar.
  for (LayoutRecord& rec : layout.records) {
    if (rec.block.kind != BlockKind::kText) continue;
    const std::string long_text(kMaxInlinePayloadChars + 500, 'a');
    rec.block.payload = long_text;
    rec.fv.f12 = long_text;
    break;
  }
  ASSERT_OK(store_->WriteLayout(layout));
  ASSERT_OK_AND_ASSIGN(const DocumentLayout back, store_->ReadLayout(r.doc_id));
  EXPECT_EQ(back, layout);
  EXPECT_TRUE(std::filesystem::exists(store_->SidecarDir(r.doc_id)));
}

TEST_F(CorpusTest, LoadRejectsInconsistentLabelAndKind) {
  const eval::SynthTemplate t = eval::CleanTemplate();
  AddSource(t);
  ASSERT_OK_AND_ASSIGN(
      const IngestResult r,
      IngestSynth(t, eval::GenerateDocument(t, 1, {.seed = 3})));
  ASSERT_OK_AND_ASSIGN(const std::string text,
                       ReadFile(store_->LayoutPath(r.doc_id)));
  std::vector<std::string> lines = absl::StrSplit(ToAbsl(text), '\n');
  int changed_line = -1;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    nlohmann::json j = nlohmann::json::parse(lines[i]);
    if (j.value("record", "") == "block" && j["B"] == 3) {
      j["B"] = 1;
      j["L"] = 5;
      lines[i] = j.dump();
      changed_line = static_cast<int>(i) + 1;
      break;
    }
  }
  ASSERT_GT(changed_line, 0);
  std::string edited;
  for (const std::string& l : lines) {
    if (!l.empty()) absl::StrAppend(&edited, l, "\n");
  }
  ASSERT_OK(WriteFileAtomic(store_->LayoutPath(r.doc_id), edited));
  const auto loaded = store_->ReadLayout(r.doc_id);
  ASSERT_FALSE(loaded.ok());
  EXPECT_THAT(std::string(loaded.status().message()),
              HasSubstr(absl::StrCat("line ", changed_line)));
  EXPECT_FALSE(VerifyCorpus(*store_).ok());
}

TEST_F(CorpusTest, DuplicateBytesAreIngestedOnce) {
  const eval::SynthTemplate t = eval::CleanTemplate();
  AddSource(t);
  const eval::SynthDocument doc = eval::GenerateDocument(t, 2, {.seed = 3});
  ASSERT_OK_AND_ASSIGN(const IngestResult a, IngestSynth(t, doc));
  ASSERT_OK_AND_ASSIGN(const IngestResult b, IngestSynth(t, doc));
  EXPECT_EQ(a.outcome, IngestOutcome::kIngested);
  EXPECT_EQ(b.outcome, IngestOutcome::kDuplicate);
  EXPECT_EQ(a.doc_id, b.doc_id);
  ASSERT_OK_AND_ASSIGN(const auto manifests, store_->ListManifests(t.source_id));
  EXPECT_EQ(manifests.size(), 1u);
}

TEST_F(CorpusTest, DocumentsBefore2014AreFiltered) {
  const eval::SynthTemplate t = eval::CleanTemplate();
  AddSource(t);
  ASSERT_OK_AND_ASSIGN(
      const IngestResult old,
      IngestSynth(t, eval::GenerateDocument(t, 3, {.seed = 3, .year = 2010})));
  EXPECT_EQ(old.outcome, IngestOutcome::kFiltered);
  EXPECT_EQ(IngestOutcomeName(old.outcome), "filtered_pre2014");
  EXPECT_FALSE(store_->HasDocument(old.doc_id));
  ASSERT_OK_AND_ASSIGN(const auto filtered, store_->ReadFiltered());
  EXPECT_EQ(filtered.size(), 1u);

  ASSERT_OK_AND_ASSIGN(
      const IngestResult recent,
      IngestSynth(t, eval::GenerateDocument(t, 4, {.seed = 3, .year = 2016})));
  EXPECT_EQ(recent.outcome, IngestOutcome::kIngested);
  ASSERT_TRUE(recent.manifest.has_value());
  EXPECT_EQ(recent.manifest->status, ValidationStatus::kUnvalidated);
  ASSERT_TRUE(recent.manifest->publication_date.has_value());
  EXPECT_EQ(recent.manifest->publication_date->substr(0, 4), "2016");
}

TEST_F(CorpusTest, EmptyCorpusStatsAreZero) {
  AddSource(eval::CleanTemplate());
  ASSERT_OK_AND_ASSIGN(const CorpusStats stats, ComputeStats(*store_));
  ASSERT_EQ(stats.rows.size(), 1u);
  SourceStats zero;
  zero.source_id = eval::CleanTemplate().source_id;
  EXPECT_EQ(stats.rows[0], zero);
  zero.source_id = "Total";
  EXPECT_EQ(stats.total, zero);
  const VerifyReport report = VerifyCorpus(*store_);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.documents, 0);
}

TEST_F(CorpusTest, StatsMatchGeneratorCounts) {
  const eval::SynthTemplate t = eval::TwoColumnTemplate();
  AddSource(t);
  int64_t pages = 0, tokens = 0;
  std::map<BlockKind, int64_t> kinds;
  for (int i = 0; i < 3; ++i) {
    const eval::SynthDocument doc = eval::GenerateDocument(t, i, {.seed = 5});
    ASSERT_OK_AND_ASSIGN(const IngestResult r, IngestSynth(t, doc));
    ASSERT_EQ(r.outcome, IngestOutcome::kIngested);
    pages += doc.manifest.page_count;
    tokens += doc.manifest.TokenCount();
    for (const eval::SynthBlock& b : doc.manifest.blocks) ++kinds[b.kind];
  }
  ASSERT_OK_AND_ASSIGN(const CorpusStats stats,
                       ComputeStats(*store_, t.source_id));
  EXPECT_EQ(stats.total.docs, 3);
  EXPECT_EQ(stats.total.pages, pages);
  EXPECT_EQ(stats.total.tokens, tokens);
  EXPECT_EQ(stats.total.images, kinds[BlockKind::kImage]);
  EXPECT_EQ(stats.total.tables, kinds[BlockKind::kTable]);
  EXPECT_EQ(stats.total.links, kinds[BlockKind::kLink]);
  EXPECT_EQ(stats.total.identifiers + stats.total.titles +
                stats.total.summaries + stats.total.bodies,
            kinds[BlockKind::kText]);
  EXPECT_TRUE(VerifyCorpus(*store_).ok());
}

TEST_F(CorpusTest, RotatedTableCellsMatchGenerator) {
  const eval::SynthTemplate t = eval::TwoColumnTemplate();
  AddSource(t);
  for (int i = 0; i < 40; ++i) {
    const eval::SynthDocument doc = eval::GenerateDocument(t, i, {.seed = 11});
    std::vector<std::vector<std::vector<std::string>>> want;
    for (const eval::SynthBlock& b : doc.manifest.blocks) {
      if (b.kind == BlockKind::kTable && b.rotation != 0) {
        want.push_back(b.cells);
      }
    }
    if (want.empty()) continue;
    ASSERT_OK_AND_ASSIGN(const IngestResult r, IngestSynth(t, doc));
    ASSERT_OK_AND_ASSIGN(const DocumentLayout layout,
                         store_->ReadLayout(r.doc_id));
    std::vector<std::vector<std::vector<std::string>>> got;
    for (const LayoutRecord& rec : layout.records) {
      if (rec.table && rec.table->rotation != 0) got.push_back(rec.table->cells);
    }
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want);
    return;
  }
  FAIL() << "no rotated table generated";
}

TEST(OverlayTest, TitleIsPinkWithExactBox) {
  DocumentLayout layout;
  layout.doc_id = "d";
  layout.pages = {{0, 595, 842, 0}, {1, 595, 842, 0}};
  LayoutRecord r;
  r.page = layout.pages[0];
  r.block.block_id = "d-0-0";
  r.block.kind = BlockKind::kText;
  r.block.label = LayoutLabel::kTitle;
  r.block.bbox = {10.5, 20.25, 100.0, 50.0};
  r.block.payload = "TITULO";
  layout.records.push_back(r);
  const std::string svg = RenderPageSvg(layout, 0);
  EXPECT_THAT(svg, HasSubstr("<rect x=\"10.5\" y=\"20.25\" width=\"89.5\" "
                             "height=\"29.75\" fill=\"none\" "
                             "stroke=\"#ff69b4\""));
  EXPECT_THAT(svg, HasSubstr("data-bbox=\"10.5 20.25 100 50\""));
  EXPECT_EQ(OverlayColor(r.block), "#ff69b4");

  const std::string empty = RenderPageSvg(layout, 1);
  EXPECT_EQ(empty.find("<rect"), std::string::npos);
  EXPECT_THAT(empty, HasSubstr("width=\"595\""));
}

TEST(OverlayTest, ExactNumberRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 595.0, 1e-9, 841.89}) {
    EXPECT_EQ(std::stod(ExactNumber(v)), v);
  }
}

class FakeClock : public Clock {
 public:
  double NowSeconds() override { return now_; }
  void SleepSeconds(double s) override {
    if (s > 0) now_ += s;
  }

 private:
  double now_ = 100.0;
};

class FakeTransport : public HttpTransport {
 public:
  explicit FakeTransport(Clock* clock) : clock_(clock) {}

  absl::StatusOr<std::string> Get(const std::string& url) override {
    starts.push_back(clock_->NowSeconds());
    auto it = bodies.find(url);
    if (it == bodies.end()) return absl::UnavailableError("HTTP 503");
    return it->second;
  }

  std::map<std::string, std::string> bodies;
  std::vector<double> starts;

 private:
  Clock* clock_;
};

TEST(FetchTest, RequestsAreAtLeastOneSecondApart) {
  FakeClock clock;
  FakeTransport transport(&clock);
  transport.bodies = {{"a", "x"}, {"b", "y"}};
  FetchConfig config;
  config.rate_limit_seconds = 0.25;
  PoliteFetcher fetcher(config, &transport, &clock);
  EXPECT_EQ(fetcher.min_interval_seconds(), 1.0);
  ASSERT_OK(fetcher.Fetch("a", nullptr));
  ASSERT_OK(fetcher.Fetch("b", nullptr));
  ASSERT_OK(fetcher.Fetch("a", nullptr));
  EXPECT_EQ(transport.starts, (std::vector<double>{100, 101, 102}));
}

TEST(FetchTest, RetriesWithExponentialBackoff) {
  FakeClock clock;
  FakeTransport transport(&clock);
  FetchConfig config;
  config.max_retries = 3;
  config.backoff_seconds = 2.0;
  PoliteFetcher fetcher(config, &transport, &clock);
  int attempts = 0;
  const auto body = fetcher.Fetch("missing", &attempts);
  EXPECT_EQ(body.status().code(), absl::StatusCode::kUnavailable);
  EXPECT_EQ(attempts, 4);
  EXPECT_EQ(transport.starts, (std::vector<double>{100, 102, 106, 114}));
}

TEST(FetchTest, ExpandsUrlTemplates) {
  FetchConfig config;
  config.urls = {"https://h/boe-{n}.pdf", "https://h/fixed.pdf"};
  config.max_documents = 2;
  EXPECT_EQ(ExpandUrls(config),
            (std::vector<std::string>{"https://h/boe-1.pdf",
                                      "https://h/boe-2.pdf",
                                      "https://h/fixed.pdf"}));
}

TEST_F(CorpusTest, FailedDownloadsAreDeadLettered) {
  const eval::SynthTemplate t = eval::CleanTemplate();
  SourceProfile profile = eval::TemplateProfile(t);
  profile.fetch.enabled = true;
  profile.fetch.urls = {"https://h/doc{n}.pdf"};
  profile.fetch.max_documents = 3;
  profile.fetch.max_retries = 1;
  ASSERT_OK(store_->PutSource(profile));
  ASSERT_OK(store_->PutRules(t.source_id, eval::StarterRules(t)));

  FakeClock clock;
  FakeTransport transport(&clock);
  const std::string pdf = eval::GenerateDocument(t, 0, {.seed = 2}).pdf;
  transport.bodies = {{"https://h/doc1.pdf", pdf},
                      {"https://h/doc2.pdf", pdf}};
  PoliteFetcher fetcher(profile.fetch, &transport, &clock);
  ASSERT_OK_AND_ASSIGN(auto ingestor,
                       Ingestor::Create(store_.get(), t.source_id));
  ASSERT_OK_AND_ASSIGN(const FetchSummary summary,
                       FetchSource(store_.get(), ingestor.get(), &fetcher));
  EXPECT_EQ(summary.requested, 3);
  EXPECT_EQ(summary.ingested, 1);
  EXPECT_EQ(summary.duplicates, 1);
  EXPECT_EQ(summary.dead_lettered, 1);

  std::ifstream in(store_->root() / "dead_letter.jsonl");
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  const nlohmann::json entry = nlohmann::json::parse(line);
  EXPECT_EQ(entry["url"], "https://h/doc3.pdf");
  EXPECT_EQ(entry["attempts"], 2);
  EXPECT_FALSE(std::getline(in, line));
}

TEST_F(CorpusTest, FetchingDisabledIsAPreconditionFailure) {
  const eval::SynthTemplate t = eval::CleanTemplate();
  AddSource(t);
  FakeClock clock;
  FakeTransport transport(&clock);
  PoliteFetcher fetcher({}, &transport, &clock);
  ASSERT_OK_AND_ASSIGN(auto ingestor,
                       Ingestor::Create(store_.get(), t.source_id));
  EXPECT_EQ(FetchSource(store_.get(), ingestor.get(), &fetcher).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(ProfileTest, TomlRoundTripAndValidation) {
  SourceProfile p = eval::TemplateProfile(eval::HardTemplate());
  p.fetch.urls = {"https://h/{n}.pdf"};
  p.fetch.max_documents = 7;
  ASSERT_OK_AND_ASSIGN(const SourceProfile back,
                       ParseProfile(SerializeProfile(p)));
  EXPECT_EQ(back, p);
  EXPECT_TRUE(back.reconstruct_words);
  SourceProfile bad = p;
  bad.source_id = "Bad Id";
  EXPECT_FALSE(ValidateProfile(bad).ok());
  bad = p;
  bad.fetch.rate_limit_seconds = 0.5;
  EXPECT_FALSE(ValidateProfile(bad).ok());
}

}  // namespace
}  // namespace dla::corpus
