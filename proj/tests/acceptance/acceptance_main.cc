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

// End-to-end acceptance run. Drives the `dla` binary over a synthetic corpus
// of three templates, repeats the run in a second directory, and prints one
// PASS/FAIL line per criterion. Exits non-zero when any criterion fails.

#include <unistd.h>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "dla/core/layout.h"
#include "dla/corpus/store.h"
#include "dla/eval/synth.h"
#include "dla/features/features.h"
#include "json.hpp"
#include "tests/testing/oracles.h"

namespace dla::acceptance {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr int kValidatedPagesForModel = 50;

struct Config {
  std::string dla;
  fs::path work;
  int docs = 60;
  uint64_t seed = 7;
  bool keep = false;
};

struct Outcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::string Quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  return out + "'";
}

// Runs `dla args...` in `dir` with stdout to `out` (or the run log) and
// stderr appended to the run log. Returns the exit status.
int Dla(const Config& cfg, const fs::path& dir, const std::string& args,
        const fs::path& out = {}) {
  const fs::path log = dir / "run.log";
  const std::string stdout_target =
      out.empty() ? absl::StrCat(">> ", Quote(log.string()))
                  : absl::StrCat("> ", Quote(out.string()));
  const std::string cmd =
      absl::StrCat("cd ", Quote(dir.string()), " && ", Quote(cfg.dla), " ",
                   args, " ", stdout_target, " 2>> ", Quote(log.string()));
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

json ReadJson(const fs::path& p) {
  std::ifstream in(p);
  json j = json::parse(in, nullptr, false);
  return j;
}

std::string ReadBytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> Sources(const fs::path& gen) {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(gen)) {
    if (e.is_directory()) out.push_back(e.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Artifacts of one full pipeline run.
struct Run {
  fs::path dir;
  bool ok = true;
  std::string error;
  double extraction_seconds = 0.0;
  std::vector<std::string> sources;
  std::map<std::string, json> scores;
  std::map<std::string, json> simulations;
  json eval;
};

Run Pipeline(const Config& cfg, const fs::path& dir) {
  Run run;
  run.dir = dir;
  fs::create_directories(dir);
  auto fail = [&](std::string what) {
    run.ok = false;
    run.error = std::move(what);
    return run;
  };
  const auto start = std::chrono::steady_clock::now();
  if (Dla(cfg, dir,
          absl::StrCat("generate --out gen --docs ", cfg.docs, " --seed ",
                       cfg.seed)) != 0) {
    return fail("generate failed");
  }
  run.sources = Sources(dir / "gen");
  for (const std::string& s : run.sources) {
    if (Dla(cfg, dir,
            absl::StrCat("source add --root corpus --profile gen/", s,
                         "/profile.toml")) != 0) {
      return fail("source add " + s);
    }
    if (Dla(cfg, dir,
            absl::StrCat("ingest --root corpus --source ", s, " gen/", s)) !=
        0) {
      return fail("ingest " + s);
    }
  }
  for (const std::string& s : run.sources) {
    const fs::path out = dir / absl::StrCat("score-", s, ".json");
    if (Dla(cfg, dir,
            absl::StrCat("score --root corpus --source ", s, " --truth gen/",
                         s, " --out ", Quote(out.string()))) != 0) {
      return fail("score " + s);
    }
    run.scores[s] = ReadJson(out);
  }
  run.extraction_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  for (const std::string& s : run.sources) {
    const fs::path out = dir / absl::StrCat("simulate-", s, ".json");
    if (Dla(cfg, dir,
            absl::StrCat("simulate-review --root corpus --source ", s,
                         " --truth gen/", s, " --seed ", cfg.seed,
                         " --validate-rest --out ", Quote(out.string()))) !=
        0) {
      return fail("simulate-review " + s);
    }
    run.simulations[s] = ReadJson(out);
  }
  if (Dla(cfg, dir,
          absl::StrCat("eval --root corpus --repeats 10 --seed ", cfg.seed,
                       " --out eval.json")) != 0) {
    return fail("eval");
  }
  run.eval = ReadJson(dir / "eval.json");
  return run;
}

Outcome ExtractionFidelity(const Run& run) {
  Outcome o{"extraction fidelity"};
  bool pass = run.ok;
  std::vector<std::string> parts;
  for (const std::string& s : run.sources) {
    const json& j = run.scores.at(s);
    const double recall = j["recall"];
    const double precision = j["precision"];
    const double cells = j["cell_accuracy"];
    const int tables = j["tables_expected"];
    const int shapes = j["table_shape_correct"];
    pass = pass && recall >= 0.99 && precision >= 0.99 && cells >= 0.99 &&
           shapes == tables;
    parts.push_back(absl::StrFormat(
        "%s recall=%.4f precision=%.4f tables=%d/%d cells=%.4f", s, recall,
        precision, shapes, tables, cells));
  }
  pass = pass && run.sources.size() == 3 &&
         run.extraction_seconds <= 300.0;
  parts.push_back(absl::StrFormat("%.1fs", run.extraction_seconds));
  o.pass = pass;
  o.detail = absl::StrJoin(parts, "; ");
  return o;
}

Outcome GeometryAndFeatureOracles() {
  Outcome o{"geometry/feature oracles"};
  std::mt19937_64 rng(20260101);
  double worst_overlap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const BoundingBox a = testing::RandomBox(rng, 300.0, 40.0, 200.0);
    const BoundingBox b = testing::RandomBox(rng, 300.0, 40.0, 200.0);
    worst_overlap =
        std::max(worst_overlap, std::abs(OverlapFraction(a, b) -
                                         testing::RasterOverlapFraction(a, b)));
  }
  const PageGeometry page{0, 595.0, 842.0, 0};
  int feature_mismatches = 0;
  int out_of_range = 0;
  features::FontDictionary fonts;
  for (int i = 0; i < 1000; ++i) {
    LayoutBlock block = testing::RandomTextBlock(rng, 0);
    auto fv = features::ComputeFeatures(block, page);
    const testing::NaiveTextFeatures want = testing::CountTextFeatures(block);
    if (!fv.ok() || !fv->text || fv->text->f13 != want.bold_fraction ||
        fv->text->f14 != want.italic_fraction ||
        fv->text->f15 != want.mean_size || fv->text->f16 != want.fonts ||
        fv->text->f17 != want.upper_fraction ||
        fv->text->f18 != want.tokens) {
      ++feature_mismatches;
      continue;
    }
    if (i % 2 == 0) fonts.Register(fv->text->f16);
    auto in = features::NormalizeForClassifier(*fv, page, fonts);
    if (!in.ok()) {
      ++out_of_range;
      continue;
    }
    // Page index, mean size, font code and token count stay raw.
    for (int k = 1; k < features::kNumClassifierFeatures; ++k) {
      if (k == 13 || k == 14 || k == 16) continue;
      if (in->values[k] < 0.0 || in->values[k] > 1.0) ++out_of_range;
    }
  }
  o.pass = worst_overlap <= 1e-3 && feature_mismatches == 0 &&
           out_of_range == 0;
  o.detail = absl::StrFormat(
      "max |overlap - raster| = %.2e over 1000 pairs; feature mismatches "
      "%d/1000; normalized values outside [0,1]: %d",
      worst_overlap, feature_mismatches, out_of_range);
  return o;
}

double ClippedArea(const BoundingBox& b) {
  return std::max(0.0, b.x1 - b.x0) * std::max(0.0, b.y1 - b.y0);
}

Outcome SuppressionPostCondition(const Run& run) {
  Outcome o{"suppression post-condition"};
  auto store = corpus::CorpusStore::Open(run.dir / "corpus");
  if (!store.ok()) {
    o.detail = std::string(store.status().message());
    return o;
  }
  auto manifests = (*store)->ListManifests(std::nullopt);
  if (!manifests.ok()) {
    o.detail = std::string(manifests.status().message());
    return o;
  }
  int64_t pairs = 0;
  int violations = 0;
  int text_blocks = 0;
  for (const corpus::DocumentManifest& m : *manifests) {
    auto layout = (*store)->ReadLayout(m.doc_id);
    if (!layout.ok()) {
      ++violations;
      continue;
    }
    for (const corpus::LayoutRecord& t : layout->records) {
      if (t.block.kind != BlockKind::kText) continue;
      ++text_blocks;
      const BoundingBox& a = t.block.bbox;
      for (const corpus::LayoutRecord& tab : layout->records) {
        if (tab.block.kind != BlockKind::kTable ||
            tab.page.page_index != t.page.page_index) {
          continue;
        }
        ++pairs;
        const BoundingBox& b = tab.block.bbox;
        const BoundingBox inter{std::max(a.x0, b.x0), std::max(a.y0, b.y0),
                                std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
        const double area = ClippedArea(a);
        if (area > 0 && ClippedArea(inter) / area > 0.7) ++violations;
      }
    }
  }
  o.pass = run.ok && violations == 0 && !manifests->empty();
  o.detail = absl::StrFormat(
      "%d documents, %d text blocks, %d text/table pairs scanned, %d above 0.7",
      manifests->size(), text_blocks, pairs, violations);
  return o;
}

Outcome CurationLoop(const Run& run) {
  Outcome o{"curation loop"};
  if (!run.ok) {
    o.detail = run.error;
    return o;
  }
  bool pass = true;
  std::vector<std::string> parts;
  for (const std::string& s : run.sources) {
    const json& sim = run.simulations.at(s);
    int first_model = -1;
    int first_at_threshold = -1;
    bool consistent = true;
    for (size_t i = 0; i < sim["steps"].size(); ++i) {
      const json& step = sim["steps"][i];
      const bool model = step["mode"] == "model";
      const bool reached = step["validated_pages"] >= kValidatedPagesForModel;
      if (model != reached) consistent = false;
      if (model && first_model < 0) first_model = static_cast<int>(i);
      if (reached && first_at_threshold < 0) {
        first_at_threshold = static_cast<int>(i);
      }
    }
    const int switch_step = sim["switch_step"];
    const bool switched = consistent && first_model > 0 &&
                          first_model == first_at_threshold &&
                          switch_step == first_model;
    pass = pass && switched;
    std::string part = absl::StrFormat(
        "%s switch at step %d (%d pages)", s, switch_step,
        first_model >= 0 ? sim["steps"][first_model]["validated_pages"].get<int>()
                         : -1);
    if (s == "synth-hard") {
      const double heuristic = sim["heuristic"]["accuracy"];
      const double model = sim["model"]["accuracy"];
      pass = pass && model - heuristic >= 5.0;
      absl::StrAppend(&part,
                      absl::StrFormat(", heuristic %.2f%% vs forest %.2f%%",
                                      heuristic, model));
    }
    parts.push_back(part);
  }
  pass = pass && run.simulations.count("synth-hard") == 1;
  o.pass = pass;
  o.detail = absl::StrJoin(parts, "; ");
  return o;
}

Outcome ProtocolReproduction(const Run& run) {
  Outcome o{"protocol reproduction"};
  if (!run.ok || !run.eval.is_array()) {
    o.detail = run.ok ? "no eval report" : run.error;
    return o;
  }
  auto store = corpus::CorpusStore::Open(run.dir / "corpus");
  if (!store.ok()) {
    o.detail = std::string(store.status().message());
    return o;
  }
  const std::regex header(
      R"(^Source\s*\|\s*Overall\s*\|\s*ID\s*\|\s*Title\s*\|\s*Summary\s*\|\s*Body\s*$)");
  const std::regex row(
      R"(^[a-z0-9_-]+\s*(\|\s*\d+\.\d\d_\d+\.\d\d\s*){5}$)");
  bool pass = run.eval.size() == run.sources.size();
  std::vector<std::string> parts;
  for (const json& report : run.eval) {
    const std::string source = report["source_id"];
    auto manifests = (*store)->ListManifests(source);
    std::set<std::string> validated;
    bool fully_validated = manifests.ok();
    if (manifests.ok()) {
      for (const corpus::DocumentManifest& m : *manifests) {
        validated.insert(m.doc_id);
        fully_validated = fully_validated &&
                          m.status == corpus::ValidationStatus::kValidated;
      }
    }
    const double overall = report["overall"]["mean"];
    double worst_class = 100.0;
    for (const char* c : {"ID", "Title", "Summary", "Body"}) {
      worst_class = std::min(worst_class,
                             report["per_class"][c]["mean"].get<double>());
    }
    // Every repeat must keep each document wholly on one side of the split.
    bool separated = report["splits"].size() == 10 && report["repeats"] == 10;
    const size_t expected_test = static_cast<size_t>(
        std::lround(0.2 * static_cast<double>(validated.size())));
    for (const json& split : report["splits"]) {
      std::set<std::string> train, test;
      for (const auto& id : split["train_docs"]) train.insert(id);
      for (const auto& id : split["test_docs"]) test.insert(id);
      std::set<std::string> both;
      std::set_intersection(train.begin(), train.end(), test.begin(),
                            test.end(), std::inserter(both, both.end()));
      std::set<std::string> all = train;
      all.insert(test.begin(), test.end());
      separated = separated && both.empty() && all == validated &&
                  test.size() == expected_test;
    }
    std::istringstream table(report["table"].get<std::string>());
    std::vector<std::string> lines;
    for (std::string l; std::getline(table, l);) lines.push_back(l);
    const bool shaped = lines.size() == 3 &&
                        std::regex_match(lines[0], header) &&
                        std::regex_match(lines[2], row);
    const bool ok = fully_validated && overall >= 95.0 &&
                    worst_class >= 90.0 && separated && shaped;
    pass = pass && ok;
    parts.push_back(absl::StrFormat(
        "%s overall %.2f, min class %.2f, %s, %s", source, overall,
        worst_class, separated ? "splits disjoint" : "SPLITS OVERLAP",
        shaped ? "table shaped" : "TABLE MISSHAPEN"));
  }
  o.pass = pass;
  o.detail = absl::StrJoin(parts, "; ");
  return o;
}

// Relative path -> bytes of every file under `root` matching `keep`.
std::map<std::string, std::string> Snapshot(
    const fs::path& root, const std::function<bool(const fs::path&)>& keep) {
  std::map<std::string, std::string> out;
  if (!fs::exists(root)) return out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file() || !keep(e.path())) continue;
    out[fs::relative(e.path(), root).string()] = ReadBytes(e.path());
  }
  return out;
}

Outcome Determinism(const Run& a, const Run& b) {
  Outcome o{"determinism"};
  if (!a.ok || !b.ok) {
    o.detail = a.ok ? b.error : a.error;
    return o;
  }
  auto layouts = [](const fs::path& p) { return p.extension() == ".jsonl"; };
  auto models = [](const fs::path& p) { return p.filename() == "model.txt"; };
  const auto la = Snapshot(a.dir / "corpus" / "layout", layouts);
  const auto lb = Snapshot(b.dir / "corpus" / "layout", layouts);
  const auto ma = Snapshot(a.dir / "corpus" / "sources", models);
  const auto mb = Snapshot(b.dir / "corpus" / "sources", models);
  const std::string ea = ReadBytes(a.dir / "eval.json");
  const std::string eb = ReadBytes(b.dir / "eval.json");
  o.pass = !la.empty() && la == lb && ma.size() == 3 && ma == mb &&
           !ea.empty() && ea == eb;
  o.detail = absl::StrFormat(
      "%d layout files %s, %d model files %s, eval report %s", la.size(),
      la == lb ? "identical" : "DIFFER", ma.size(),
      ma == mb ? "identical" : "DIFFER", ea == eb ? "identical" : "DIFFERS");
  return o;
}

Outcome StatsIntegrity(const Config& cfg, const Run& run) {
  Outcome o{"stats integrity"};
  if (!run.ok) {
    o.detail = run.error;
    return o;
  }
  const fs::path stats_path = run.dir / "stats.json";
  const int stats_rc =
      Dla(cfg, run.dir, "stats --root corpus --json", stats_path);
  const int verify_rc = Dla(cfg, run.dir, "verify --root corpus");
  const json stats = ReadJson(stats_path);
  bool equal = stats_rc == 0 && stats.is_object();
  std::vector<std::string> mismatches;
  for (const std::string& s : run.sources) {
    auto manifests = eval::LoadManifests(run.dir / "gen" / s);
    if (!manifests.ok()) {
      equal = false;
      continue;
    }
    std::map<std::string, int64_t> want;
    want["docs"] = static_cast<int64_t>(manifests->size());
    for (const eval::SynthManifest& m : *manifests) {
      want["pages"] += m.page_count;
      want["tokens"] += m.TokenCount();
      for (const eval::SynthBlock& b : m.blocks) {
        switch (b.kind) {
          case BlockKind::kImage:
            ++want["images"];
            break;
          case BlockKind::kTable:
            ++want["tables"];
            break;
          case BlockKind::kLink:
            ++want["links"];
            break;
          case BlockKind::kText:
            switch (b.label) {
              case LayoutLabel::kIdentifier:
                ++want["identifier"];
                break;
              case LayoutLabel::kTitle:
                ++want["title"];
                break;
              case LayoutLabel::kSummary:
                ++want["summary"];
                break;
              default:
                ++want["body"];
                break;
            }
            break;
        }
      }
    }
    const json* row = nullptr;
    if (equal) {
      for (const json& r : stats["sources"]) {
        if (r["source"] == s) row = &r;
      }
    }
    if (row == nullptr) {
      equal = false;
      continue;
    }
    for (const char* key : {"docs", "pages", "tokens", "images", "tables",
                            "links", "identifier", "title", "summary",
                            "body"}) {
      const int64_t got = (*row)[key].get<int64_t>();
      if (got != want[key]) {
        equal = false;
        mismatches.push_back(
            absl::StrCat(s, ".", key, " ", got, " != ", want[key]));
      }
    }
  }
  o.pass = equal && verify_rc == 0;
  o.detail = absl::StrCat(
      mismatches.empty() ? "all counts equal the generator manifests"
                         : absl::StrJoin(mismatches, ", "),
      "; dla verify exit ", verify_rc);
  if (stats.is_object()) {
    absl::StrAppend(&o.detail, "; ", stats["total"]["docs"].get<int64_t>(),
                    " docs, ", stats["total"]["pages"].get<int64_t>(),
                    " pages");
  }
  return o;
}

int Main(int argc, char** argv) {
  Config cfg;
  std::string work;
  CLI::App app("End-to-end acceptance run");
  app.add_option("--dla", cfg.dla, "Path to the dla binary")->required();
  app.add_option("--work", work, "Working directory");
  app.add_option("--docs", cfg.docs, "Documents per template");
  app.add_option("--seed", cfg.seed, "Generator and evaluation seed");
  app.add_flag("--keep", cfg.keep, "Keep the working directory");
  CLI11_PARSE(app, argc, argv);
  cfg.dla = fs::absolute(cfg.dla).string();
  cfg.work = work.empty() ? fs::temp_directory_path() /
                                absl::StrCat("dla_acceptance_", getpid())
                          : fs::path(work);
  fs::remove_all(cfg.work);
  fs::create_directories(cfg.work);

  const auto start = std::chrono::steady_clock::now();
  const Run a = Pipeline(cfg, cfg.work / "run1");
  const Run b = Pipeline(cfg, cfg.work / "run2");

  const std::vector<Outcome> outcomes = {
      ExtractionFidelity(a),  GeometryAndFeatureOracles(),
      SuppressionPostCondition(a), CurationLoop(a),
      ProtocolReproduction(a), Determinism(a, b),
      StatsIntegrity(cfg, a)};
  int failed = 0;
  for (const Outcome& o : outcomes) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << o.name << ": "
              << o.detail << "\n";
    if (!o.pass) ++failed;
  }
  const double total = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  std::cout << absl::StrFormat("%d/%d criteria passed in %.1fs\n",
                               outcomes.size() - failed, outcomes.size(),
                               total);
  if (!cfg.keep && failed == 0) fs::remove_all(cfg.work);
  if (failed > 0) std::cout << "artifacts kept in " << cfg.work << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace dla::acceptance

int main(int argc, char** argv) { return dla::acceptance::Main(argc, argv); }
