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

#include <cmath>
#include <numeric>
#include <set>

#include "absl/strings/str_cat.h"
#include "dla/eval/protocol.h"
#include "dla/eval/score.h"
#include "dla/eval/synth.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "tests/testing/test_util.h"

namespace dla::eval {
namespace {

using labeler::CuratedBlock;
using labeler::CuratedDocument;
using ::testing::HasSubstr;

const PageGeometry kPage{0, 595.0, 842.0, 0};

CuratedBlock Block(LayoutLabel label, double y, double bold, double size) {
  CuratedBlock b;
  b.page = kPage;
  b.fv.f3 = y;
  b.fv.f5 = y + 15;
  b.fv.f4 = 500;
  b.fv.f2 = 40;
  b.fv.f12 = "x";
  features::TextFeatures t;
  t.f13 = bold;
  t.f15 = size;
  t.f16 = {"Times"};
  t.f18 = 4;
  b.fv.text = t;
  b.label = label;
  b.origin = LabelOrigin::kHuman;
  return b;
}

// Documents whose labels follow the block position, plus noise blocks whose
// label cannot be predicted from the features.
std::vector<CuratedDocument> ToyCorpus(int n) {
  std::vector<CuratedDocument> docs;
  for (int i = 0; i < n; ++i) {
    CuratedDocument d;
    d.doc_id = absl::StrCat("doc", 100 + i);
    d.page_count = 1;
    d.blocks.push_back(Block(LayoutLabel::kIdentifier, 20, 0, 8));
    d.blocks.push_back(Block(LayoutLabel::kTitle, 80, 1, 14));
    if (i % 2 == 0) d.blocks.push_back(Block(LayoutLabel::kSummary, 140, 0, 11));
    d.blocks.push_back(Block(LayoutLabel::kBody, 300, 0, 10));
    d.blocks.push_back(Block(i % 3 == 0 ? LayoutLabel::kTitle
                                        : LayoutLabel::kBody,
                             500, 0, 10));
    docs.push_back(d);
  }
  return docs;
}

ProtocolOptions FastProtocol() {
  ProtocolOptions o;
  o.forest.n_trees = 5;
  return o;
}

TEST(SummarizeTest, PopulationMeanAndDeviation) {
  const std::vector<double> v = {90, 95, 100, 85};
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const MeanStd m = Summarize(v);
  EXPECT_DOUBLE_EQ(m.mean, mean);
  EXPECT_DOUBLE_EQ(m.std, std::sqrt(ss / v.size()));
  EXPECT_EQ(m.count, 4);
  EXPECT_EQ(Summarize({}).count, 0);
}

TEST(SummarizeTest, FormatsTwoDecimals) {
  EXPECT_EQ(FormatMeanStd({98.0812, 1.1688, 10}), "98.08_1.17");
  EXPECT_EQ(FormatMeanStd({100.0, 0.0, 10}), "100.00_0.00");
}

TEST(ProtocolTest, DefaultsAreTenRepeatsOfEightyTwenty) {
  const ProtocolOptions o;
  EXPECT_EQ(o.repeats, 10);
  EXPECT_EQ(o.train_fraction, 0.8);
}

TEST(ProtocolTest, SplitsAreDocumentLevelAndDisjoint) {
  const std::vector<CuratedDocument> docs = ToyCorpus(20);
  ASSERT_OK_AND_ASSIGN(const EvalReport report,
                       RunProtocol("toy", docs, FastProtocol()));
  ASSERT_EQ(report.logs.size(), 10u);
  std::set<std::string> all;
  for (const CuratedDocument& d : docs) all.insert(d.doc_id);
  std::set<std::vector<std::string>> distinct_tests;
  for (const RepeatLog& log : report.logs) {
    EXPECT_EQ(log.train_docs.size(), 16u);
    EXPECT_EQ(log.test_docs.size(), 4u);
    std::set<std::string> train(log.train_docs.begin(), log.train_docs.end());
    std::set<std::string> union_ids = train;
    for (const std::string& id : log.test_docs) {
      EXPECT_FALSE(train.contains(id)) << id;
      union_ids.insert(id);
    }
    EXPECT_EQ(union_ids, all);
    distinct_tests.insert(log.test_docs);
  }
  EXPECT_GT(distinct_tests.size(), 1u);
}

TEST(ProtocolTest, AggregatesMatchTheLogs) {
  ASSERT_OK_AND_ASSIGN(const EvalReport report,
                       RunProtocol("toy", ToyCorpus(25), FastProtocol()));
  std::vector<double> overall;
  std::array<std::vector<double>, 4> per_class;
  std::array<int64_t, 4> support{};
  for (const RepeatLog& log : report.logs) {
    int blocks = 0, correct = 0;
    for (int c = 0; c < 4; ++c) {
      blocks += log.support[c];
      correct += log.class_correct[c];
      support[c] += log.support[c];
      if (log.support[c] > 0) {
        ASSERT_TRUE(log.per_class[c].has_value());
        EXPECT_DOUBLE_EQ(*log.per_class[c],
                         100.0 * log.class_correct[c] / log.support[c]);
        per_class[c].push_back(*log.per_class[c]);
      } else {
        EXPECT_FALSE(log.per_class[c].has_value());
      }
    }
    EXPECT_EQ(blocks, log.test_blocks);
    EXPECT_EQ(correct, log.correct);
    EXPECT_DOUBLE_EQ(log.overall, 100.0 * correct / blocks);
    overall.push_back(log.overall);
  }
  auto check = [](const std::vector<double>& v, const MeanStd& m) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= v.size();
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    EXPECT_NEAR(m.mean, mean, 1e-9);
    EXPECT_NEAR(m.std, std::sqrt(ss / v.size()), 1e-9);
    EXPECT_EQ(m.count, static_cast<int>(v.size()));
  };
  check(overall, report.overall);
  for (int c = 0; c < 4; ++c) check(per_class[c], report.per_class[c]);
  EXPECT_EQ(report.support, support);
}

TEST(ProtocolTest, SingleClassIsPerfect) {
  std::vector<CuratedDocument> docs = ToyCorpus(10);
  for (CuratedDocument& d : docs) {
    for (CuratedBlock& b : d.blocks) b.label = LayoutLabel::kBody;
  }
  ASSERT_OK_AND_ASSIGN(const EvalReport report,
                       RunProtocol("toy", docs, FastProtocol()));
  EXPECT_EQ(report.overall.mean, 100.0);
  EXPECT_EQ(report.overall.std, 0.0);
  EXPECT_EQ(report.per_class[3].mean, 100.0);
  EXPECT_EQ(report.per_class[0].count, 0);
}

TEST(ProtocolTest, TooFewDocumentsIsAnError) {
  EXPECT_FALSE(
      RunProtocol("toy", ToyCorpus(kMinProtocolDocuments - 1), FastProtocol())
          .ok());
}

TEST(ProtocolTest, ReportIsDeterministicAcrossWorkerCounts) {
  const std::vector<CuratedDocument> docs = ToyCorpus(15);
  ProtocolOptions one = FastProtocol();
  ProtocolOptions three = FastProtocol();
  three.workers = 3;
  ASSERT_OK_AND_ASSIGN(const EvalReport a, RunProtocol("toy", docs, one));
  ASSERT_OK_AND_ASSIGN(const EvalReport b, RunProtocol("toy", docs, three));
  EXPECT_EQ(a.ToJson().dump(), b.ToJson().dump());
  ProtocolOptions other = FastProtocol();
  other.seed = 99;
  ASSERT_OK_AND_ASSIGN(const EvalReport c, RunProtocol("toy", docs, other));
  EXPECT_NE(a.ToJson().dump(), c.ToJson().dump());
}

TEST(ProtocolTest, TableHasOneRowPerSource) {
  ASSERT_OK_AND_ASSIGN(const EvalReport a,
                       RunProtocol("alpha", ToyCorpus(10), FastProtocol()));
  ASSERT_OK_AND_ASSIGN(const EvalReport b,
                       RunProtocol("beta", ToyCorpus(12), FastProtocol()));
  const std::vector<EvalReport> reports = {a, b};
  const std::string table = ReportsTable(reports);
  EXPECT_THAT(table, HasSubstr("Source"));
  EXPECT_THAT(table, HasSubstr("Overall"));
  for (const char* col : kClassColumns) EXPECT_THAT(table, HasSubstr(col));
  EXPECT_THAT(table, HasSubstr("alpha"));
  EXPECT_THAT(table, HasSubstr("beta"));
  EXPECT_THAT(table, HasSubstr(FormatMeanStd(a.overall)));
}

// A layout whose records reproduce the manifest exactly.
corpus::DocumentLayout PerfectLayout(const SynthManifest& m) {
  corpus::DocumentLayout layout;
  layout.doc_id = "doc";
  for (int p = 0; p < m.page_count; ++p) {
    layout.pages.push_back({p, m.page_width, m.page_height, 0});
  }
  for (size_t i = 0; i < m.blocks.size(); ++i) {
    const SynthBlock& b = m.blocks[i];
    corpus::LayoutRecord r;
    r.page = layout.pages[b.page];
    r.block.block_id = absl::StrCat("b", i);
    r.block.kind = b.kind;
    r.block.label = b.label;
    r.block.bbox = b.bbox;
    if (b.kind == BlockKind::kTable) {
      table::TableGrid grid;
      grid.cells = b.cells;
      r.table = grid;
    }
    layout.records.push_back(r);
  }
  return layout;
}

SynthManifest SampleManifest() {
  return GenerateDocument(TwoColumnTemplate(), 0, {.seed = 4}).manifest;
}

TEST(ScoreTest, PerfectLayoutScoresOne) {
  const SynthManifest m = SampleManifest();
  const ExtractionScore s = ScoreDocument(m, PerfectLayout(m));
  EXPECT_EQ(s.matched, static_cast<int>(m.blocks.size()));
  EXPECT_EQ(s.Recall(), 1.0);
  EXPECT_EQ(s.Precision(), 1.0);
  EXPECT_EQ(s.LabelAccuracy(), 1.0);
  EXPECT_EQ(s.CellAccuracy(), 1.0);
  EXPECT_EQ(s.tables_matched, s.tables_expected);
  EXPECT_TRUE(s.notes.empty());
}

TEST(ScoreTest, OneMissedBlockCostsOneOverN) {
  const SynthManifest m = SampleManifest();
  corpus::DocumentLayout layout = PerfectLayout(m);
  layout.records.pop_back();
  const ExtractionScore s = ScoreDocument(m, layout);
  const double n = static_cast<double>(m.blocks.size());
  EXPECT_DOUBLE_EQ(s.Recall(), (n - 1) / n);
  EXPECT_EQ(s.Precision(), 1.0);
  EXPECT_EQ(s.notes.size(), 1u);
}

TEST(ScoreTest, MatchingUsesIouThreshold) {
  SynthManifest m;
  m.page_count = 1;
  m.page_width = 595;
  m.page_height = 842;
  SynthBlock b;
  b.bbox = {100, 100, 200, 150};
  b.text = "x";
  m.blocks.push_back(b);
  auto shifted = [&](double dx) {
    corpus::DocumentLayout layout = PerfectLayout(m);
    layout.records[0].block.bbox.x0 += dx;
    layout.records[0].block.bbox.x1 += dx;
    return layout;
  };
  // A horizontal shift of a fraction s of the width gives
  // IoU = (1 - s) / (1 + s).
  EXPECT_DOUBLE_EQ(
      IntersectionOverUnion(b.bbox, shifted(20).records[0].block.bbox),
      0.8 / 1.2);
  EXPECT_EQ(ScoreDocument(m, shifted(20)).matched, 0);
  EXPECT_EQ(ScoreDocument(m, shifted(5)).matched, 1);
  corpus::DocumentLayout other_kind = PerfectLayout(m);
  other_kind.records[0].block.kind = BlockKind::kImage;
  EXPECT_EQ(ScoreDocument(m, other_kind).matched, 0);
}

TEST(ScoreTest, WrongCellIsCounted) {
  const SynthManifest m = SampleManifest();
  corpus::DocumentLayout layout = PerfectLayout(m);
  int cells = 0;
  corpus::LayoutRecord* target = nullptr;
  for (corpus::LayoutRecord& r : layout.records) {
    if (r.table) {
      cells += static_cast<int>(r.table->cells.size() *
                                r.table->cells[0].size());
      target = &r;
    }
  }
  if (target == nullptr) GTEST_SKIP() << "sample has no table";
  target->table->cells[0][0] += "!";
  const ExtractionScore s = ScoreDocument(m, layout);
  EXPECT_EQ(s.cells_expected, cells);
  EXPECT_EQ(s.cells_correct, cells - 1);
}

TEST(SynthTest, GenerationIsDeterministic) {
  for (const SynthTemplate& t : DefaultTemplates()) {
    const SynthDocument a = GenerateDocument(t, 3, {.seed = 8});
    const SynthDocument b = GenerateDocument(t, 3, {.seed = 8});
    EXPECT_EQ(a.pdf, b.pdf);
    EXPECT_EQ(a.manifest, b.manifest);
    const SynthDocument c = GenerateDocument(t, 4, {.seed = 8});
    EXPECT_NE(a.pdf, c.pdf);
  }
}

TEST(SynthTest, ManifestJsonRoundTrip) {
  const SynthManifest m = SampleManifest();
  ASSERT_OK_AND_ASSIGN(const SynthManifest back,
                       ManifestFromJson(ManifestToJson(m)));
  EXPECT_EQ(back, m);
}

TEST(SynthTest, PageCountsFollowTemplate) {
  const SynthTemplate t = CleanTemplate();
  for (int i = 0; i < 20; ++i) {
    const SynthManifest m = GenerateDocument(t, i, {.seed = 1}).manifest;
    EXPECT_GE(m.page_count, t.min_pages);
    EXPECT_LE(m.page_count, t.max_pages);
    for (const SynthBlock& b : m.blocks) {
      EXPECT_LT(b.page, m.page_count);
      EXPECT_TRUE(ValidateBlock({.block_id = "x",
                                 .kind = b.kind,
                                 .label = b.label,
                                 .bbox = b.bbox,
                                 .payload = b.kind == BlockKind::kImage
                                                ? std::nullopt
                                                : std::optional(b.text.empty()
                                                                    ? "t"
                                                                    : b.text)})
                      .ok());
    }
  }
}

}  // namespace
}  // namespace dla::eval
