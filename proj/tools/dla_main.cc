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

// The `dla` command line tool.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dla/core/strings.h"
#include "dla/corpus/fetch.h"
#include "dla/corpus/ingest.h"
#include "dla/corpus/overlay.h"
#include "dla/corpus/stats.h"
#include "dla/corpus/store.h"
#include "dla/eval/protocol.h"
#include "dla/eval/score.h"
#include "dla/eval/simulate.h"
#include "dla/eval/synth.h"
#include "dla/service/curator.h"
#include "dla/service/server.h"
#include "glog/logging.h"

namespace fs = std::filesystem;

namespace dla {
namespace {

int Fail(const absl::Status& s) {
  std::cerr << "dla: " << s << "\n";
  switch (s.code()) {
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kFailedPrecondition:
      return 2;
    default:
      return 1;
  }
}

absl::StatusOr<std::unique_ptr<corpus::CorpusStore>> OpenStore(
    const std::string& root) {
  return corpus::CorpusStore::Open(root);
}

// Expands directories to the PDFs they contain, sorted by path.
std::vector<fs::path> CollectPdfs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::recursive_directory_iterator(in)) {
        if (e.is_regular_file() && e.path().extension() == ".pdf") {
          found.push_back(e.path());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.emplace_back(in);
    }
  }
  return out;
}

absl::Status WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return absl::OkStatus();
  }
  return corpus::WriteFileAtomic(path, text);
}

struct Common {
  std::string root = "corpus";
  std::string source;
};

int CmdGenerate(const std::string& out, int docs, uint64_t seed,
                const std::vector<std::string>& only) {
  std::vector<eval::SynthTemplate> templates;
  for (const eval::SynthTemplate& t : eval::DefaultTemplates()) {
    if (only.empty() ||
        std::find(only.begin(), only.end(), t.source_id) != only.end()) {
      templates.push_back(t);
    }
  }
  if (templates.empty()) {
    return Fail(absl::InvalidArgumentError("no template matches --template"));
  }
  if (absl::Status s = eval::WriteSyntheticCorpus(templates, docs, seed, out);
      !s.ok()) {
    return Fail(s);
  }
  for (const eval::SynthTemplate& t : templates) {
    std::cout << t.source_id << ": " << docs << " documents in "
              << (fs::path(out) / t.source_id).string() << "\n";
  }
  return 0;
}

int CmdSourceAdd(const Common& c, const std::string& profile_path,
                 const std::string& rules_path) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  auto toml = corpus::ReadFile(profile_path);
  if (!toml.ok()) return Fail(toml.status());
  auto profile = corpus::ParseProfile(*toml);
  if (!profile.ok()) return Fail(profile.status());
  if (absl::Status s = (*store)->PutSource(*profile); !s.ok()) return Fail(s);
  std::string rules_file = rules_path;
  if (rules_file.empty()) {
    const fs::path sibling = fs::path(profile_path).parent_path() /
                             profile->ruleset_path;
    if (fs::exists(sibling)) rules_file = sibling.string();
  }
  if (!rules_file.empty()) {
    auto rules = corpus::ReadFile(rules_file);
    if (!rules.ok()) return Fail(rules.status());
    if (absl::Status s = (*store)->PutRules(profile->source_id, *rules);
        !s.ok()) {
      return Fail(s);
    }
  }
  std::cout << "source " << profile->source_id << " registered\n";
  return 0;
}

int CmdSourceList(const Common& c) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  for (const std::string& id : (*store)->ListSources()) std::cout << id << "\n";
  return 0;
}

int CmdIngest(const Common& c, const std::vector<std::string>& inputs,
              int workers) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  auto ingestor = corpus::Ingestor::Create(store->get(), c.source);
  if (!ingestor.ok()) return Fail(ingestor.status());
  const std::vector<fs::path> paths = CollectPdfs(inputs);
  const auto results = (*ingestor)->IngestFiles(paths, workers);
  int counts[3] = {0, 0, 0};
  int failed = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    if (!results[i].ok()) {
      ++failed;
      std::cerr << paths[i].string() << ": " << results[i].status() << "\n";
      continue;
    }
    ++counts[static_cast<int>(results[i]->outcome)];
  }
  std::cout << "ingested " << counts[0] << ", duplicates " << counts[1]
            << ", filtered " << counts[2] << ", failed " << failed << "\n";
  return failed == 0 ? 0 : 1;
}

int CmdExtract(const Common& c, const std::string& pdf_path) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  auto profile = (*store)->GetSource(c.source);
  if (!profile.ok()) return Fail(profile.status());
  auto rules = (*store)->LoadRules(c.source);
  if (!rules.ok()) return Fail(rules.status());
  auto bytes = corpus::ReadFile(pdf_path);
  if (!bytes.ok()) return Fail(bytes.status());
  corpus::PipelineOptions options;
  options.extract.reconstruct_words = profile->reconstruct_words;
  corpus::Labeler labeler;
  labeler.rules = &*rules;
  auto result = corpus::RunPipeline(*bytes, c.source, options, labeler);
  if (!result.ok()) return Fail(result.status());
  for (const std::string& w : result->warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  corpus::Sidecars sidecars;
  std::cout << corpus::SerializeLayout(result->layout, &sidecars);
  return 0;
}

int CmdStats(const Common& c, bool as_json) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  std::optional<std::string> source;
  if (!c.source.empty()) source = c.source;
  auto stats = corpus::ComputeStats(**store, source);
  if (!stats.ok()) return Fail(stats.status());
  if (as_json) {
    std::cout << stats->ToJson().dump(1) << "\n";
  } else {
    std::cout << stats->ToText();
  }
  return 0;
}

int CmdVerify(const Common& c) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  const corpus::VerifyReport report = corpus::VerifyCorpus(**store);
  for (const std::string& p : report.problems) std::cerr << p << "\n";
  std::cout << "verified " << report.documents << " documents, "
            << report.records << " records, " << report.problems.size()
            << " problems\n";
  return report.ok() ? 0 : 1;
}

int CmdOverlay(const Common& c, const std::vector<std::string>& doc_ids) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  std::vector<std::string> ids = doc_ids;
  if (ids.empty()) {
    std::optional<std::string> source;
    if (!c.source.empty()) source = c.source;
    auto manifests = (*store)->ListManifests(source);
    if (!manifests.ok()) return Fail(manifests.status());
    for (const corpus::DocumentManifest& m : *manifests) {
      ids.push_back(m.doc_id);
    }
  }
  int pages = 0;
  for (const std::string& id : ids) {
    auto n = corpus::WriteOverlays(**store, id);
    if (!n.ok()) return Fail(n.status());
    pages += *n;
  }
  std::cout << "wrote " << pages << " page overlays for " << ids.size()
            << " documents\n";
  return 0;
}

int CmdEval(const Common& c, int repeats, uint64_t seed, int workers,
            const std::string& out, const std::string& table_out) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  std::vector<std::string> sources;
  if (c.source.empty()) {
    sources = (*store)->ListSources();
  } else {
    sources.push_back(c.source);
  }
  eval::ProtocolOptions options;
  options.repeats = repeats;
  options.seed = seed;
  options.workers = workers;
  std::vector<eval::EvalReport> reports;
  for (const std::string& source : sources) {
    auto docs = eval::LoadValidatedDocuments(**store, source);
    if (!docs.ok()) return Fail(docs.status());
    auto report = eval::RunProtocol(source, *docs, options);
    if (!report.ok()) return Fail(report.status());
    reports.push_back(*std::move(report));
  }
  nlohmann::json j;
  if (reports.size() == 1) {
    j = reports[0].ToJson();
  } else {
    j = nlohmann::json::array();
    for (const eval::EvalReport& r : reports) j.push_back(r.ToJson());
  }
  const std::string table = eval::ReportsTable(reports);
  if (!out.empty()) {
    if (absl::Status s = WriteOutput(out, j.dump(1) + "\n"); !s.ok()) {
      return Fail(s);
    }
  }
  if (!table_out.empty()) {
    if (absl::Status s = WriteOutput(table_out, table); !s.ok()) return Fail(s);
  }
  if (out != "-") std::cout << table;
  return 0;
}

int CmdTrain(const Common& c) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  service::Curator curator(store->get());
  auto ahead = curator.RequestTrain(c.source);
  if (!ahead.ok()) return Fail(ahead.status());
  curator.WaitIdle();
  auto status = curator.SourceStatus(c.source);
  if (!status.ok()) return Fail(status.status());
  std::cout << status->dump(1) << "\n";
  return (*status)["last_error"].is_null() ? 0 : 1;
}

int CmdValidate(const Common& c, const std::vector<std::string>& doc_ids,
                bool all) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  service::CuratorOptions options;
  options.synchronous = true;
  service::Curator curator(store->get(), options);
  std::vector<std::string> ids = doc_ids;
  if (all) {
    auto manifests = curator.ListDocuments(
        c.source.empty() ? std::nullopt : std::optional(c.source),
        std::nullopt);
    if (!manifests.ok()) return Fail(manifests.status());
    for (const corpus::DocumentManifest& m : *manifests) {
      ids.push_back(m.doc_id);
    }
  }
  for (const std::string& id : ids) {
    auto m = curator.Validate(id);
    if (!m.ok()) return Fail(m.status());
  }
  std::cout << "validated " << ids.size() << " documents\n";
  return 0;
}

absl::StatusOr<std::map<std::string, eval::SynthManifest>> LoadTruth(
    const corpus::CorpusStore& store, const std::string& source,
    const std::string& truth_dir) {
  auto manifests = eval::LoadManifests(truth_dir);
  if (!manifests.ok()) return manifests.status();
  return eval::MatchTruth(store, source, *manifests);
}

int CmdSimulate(const Common& c, const std::string& truth_dir, uint64_t seed,
                bool validate_rest, const std::string& out) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  auto truth = LoadTruth(**store, c.source, truth_dir);
  if (!truth.ok()) return Fail(truth.status());
  service::CuratorOptions options;
  options.synchronous = true;
  service::Curator curator(store->get(), options);
  eval::SimulationOptions sim_options;
  sim_options.seed = seed;
  auto result = eval::SimulateReview(&curator, c.source, *truth, sim_options);
  if (!result.ok()) return Fail(result.status());
  if (validate_rest) {
    // The held-out documents are corrected from the manifest and validated
    // too, leaving the whole source as ground truth.
    eval::SimulationOptions rest = sim_options;
    rest.test_fraction = 0.0;
    std::map<std::string, eval::SynthManifest> held;
    for (const std::string& id : result->test_docs) {
      held.emplace(id, truth->at(id));
    }
    auto second = eval::SimulateReview(&curator, c.source, held, rest);
    if (!second.ok()) return Fail(second.status());
  }
  const nlohmann::json j = result->ToJson();
  if (absl::Status s = WriteOutput(out, j.dump(1) + "\n"); !s.ok()) {
    return Fail(s);
  }
  if (out != "-" && !out.empty()) {
    std::cout << c.source << ": " << result->steps.size()
              << " documents reviewed, switch at step " << result->switch_step
              << ", heuristic " << result->heuristic.Accuracy() << "%, model "
              << result->model.Accuracy() << "%\n";
  }
  return 0;
}

int CmdScore(const Common& c, const std::string& truth_dir,
             const std::string& out) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  auto truth = LoadTruth(**store, c.source, truth_dir);
  if (!truth.ok()) return Fail(truth.status());
  eval::ExtractionScore total;
  for (const auto& [doc_id, manifest] : *truth) {
    auto layout = (*store)->ReadLayout(doc_id);
    if (!layout.ok()) return Fail(layout.status());
    total.Add(eval::ScoreDocument(manifest, *layout));
  }
  if (absl::Status s = WriteOutput(out, total.ToJson().dump(1) + "\n");
      !s.ok()) {
    return Fail(s);
  }
  return 0;
}

int CmdFetch(const Common& c) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  auto ingestor = corpus::Ingestor::Create(store->get(), c.source);
  if (!ingestor.ok()) return Fail(ingestor.status());
  corpus::CurlTransport transport;
  corpus::SystemClock clock;
  corpus::PoliteFetcher fetcher((*ingestor)->profile().fetch, &transport,
                                &clock);
  auto summary = corpus::FetchSource(store->get(), ingestor->get(), &fetcher);
  if (!summary.ok()) return Fail(summary.status());
  std::cout << "requested " << summary->requested << ", ingested "
            << summary->ingested << ", duplicates " << summary->duplicates
            << ", filtered " << summary->filtered << ", dead-lettered "
            << summary->dead_lettered << "\n";
  return summary->dead_lettered == 0 ? 0 : 1;
}

int CmdServe(const Common& c, const std::string& host, int port,
             const std::string& ui) {
  auto store = OpenStore(c.root);
  if (!store.ok()) return Fail(store.status());
  service::Curator curator(store->get());
  service::ServerOptions options;
  if (!ui.empty()) options.ui_dir = ui;
  service::ApiServer server(&curator, options);
  const int resolved = service::ResolvePort(port);
  std::cout << "serving " << c.root << " on http://" << host << ":"
            << resolved << "\n"
            << std::flush;
  if (!server.Listen(host, resolved)) {
    return Fail(absl::UnavailableError(
        absl::StrCat("cannot listen on ", host, ":", resolved)));
  }
  return 0;
}

}  // namespace
}  // namespace dla

int main(int argc, char** argv) {
  google::InitGoogleLogging(argv[0]);
  FLAGS_logtostderr = true;
  using namespace dla;  // NOLINT

  CLI::App app{"Document layout analysis corpus tools"};
  app.require_subcommand(1);
  Common c;
  int exit_code = 0;

  auto add_root = [&](CLI::App* sub) {
    sub->add_option("--root", c.root, "Corpus root directory");
  };
  auto add_source = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--source", c.source, "Source id");
    if (required) opt->required();
  };

  std::string gen_out = "synth";
  int gen_docs = 60;
  uint64_t gen_seed = 1;
  std::vector<std::string> gen_only;
  auto* gen = app.add_subcommand("generate", "Write a synthetic corpus");
  gen->add_option("--out", gen_out, "Output directory");
  gen->add_option("--docs", gen_docs, "Documents per template")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--template", gen_only, "Restrict to these source ids");
  gen->callback(
      [&] { exit_code = CmdGenerate(gen_out, gen_docs, gen_seed, gen_only); });

  auto* source = app.add_subcommand("source", "Manage sources");
  source->require_subcommand(1);
  std::string profile_path, rules_path;
  auto* source_add = source->add_subcommand("add", "Register a source");
  add_root(source_add);
  source_add->add_option("--profile", profile_path, "profile.toml")
      ->required();
  source_add->add_option("--rules", rules_path,
                         "Rule file (default: next to the profile)");
  source_add->callback(
      [&] { exit_code = CmdSourceAdd(c, profile_path, rules_path); });
  auto* source_list = source->add_subcommand("list", "List sources");
  add_root(source_list);
  source_list->callback([&] { exit_code = CmdSourceList(c); });

  std::vector<std::string> inputs;
  int workers = 1;
  auto* ingest = app.add_subcommand("ingest", "Ingest PDF files");
  add_root(ingest);
  add_source(ingest, true);
  ingest->add_option("--workers", workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  ingest->add_option("inputs", inputs, "PDF files or directories")
      ->required();
  ingest->callback([&] { exit_code = CmdIngest(c, inputs, workers); });

  std::string pdf_path;
  auto* extract =
      app.add_subcommand("extract", "Print the layout of one PDF");
  add_root(extract);
  add_source(extract, true);
  extract->add_option("pdf", pdf_path, "PDF file")->required();
  extract->callback([&] { exit_code = CmdExtract(c, pdf_path); });

  bool as_json = false;
  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  add_root(stats);
  add_source(stats, false);
  stats->add_flag("--json", as_json, "JSON output");
  stats->callback([&] { exit_code = CmdStats(c, as_json); });

  auto* verify = app.add_subcommand("verify", "Check corpus integrity");
  add_root(verify);
  verify->callback([&] { exit_code = CmdVerify(c); });

  std::vector<std::string> doc_ids;
  auto* overlay = app.add_subcommand("overlay", "Write SVG page overlays");
  add_root(overlay);
  add_source(overlay, false);
  overlay->add_option("--doc", doc_ids, "Document ids (default: all)");
  overlay->callback([&] { exit_code = CmdOverlay(c, doc_ids); });

  int repeats = 10;
  uint64_t eval_seed = 1;
  std::string eval_out, table_out;
  auto* ev = app.add_subcommand("eval", "Run the evaluation protocol");
  add_root(ev);
  add_source(ev, false);
  ev->add_option("--repeats", repeats, "Random splits")
      ->check(CLI::PositiveNumber);
  ev->add_option("--seed", eval_seed, "Master seed");
  ev->add_option("--workers", workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  ev->add_option("--out", eval_out, "JSON report path");
  ev->add_option("--table", table_out, "Text table path");
  ev->callback([&] {
    exit_code = CmdEval(c, repeats, eval_seed, workers, eval_out, table_out);
  });

  auto* train = app.add_subcommand("train", "Train the source model now");
  add_root(train);
  add_source(train, true);
  train->callback([&] { exit_code = CmdTrain(c); });

  bool validate_all = false;
  auto* validate = app.add_subcommand("validate", "Validate documents");
  add_root(validate);
  add_source(validate, false);
  validate->add_option("--doc", doc_ids, "Document ids");
  validate->add_flag("--all", validate_all, "Every document of --source");
  validate->callback(
      [&] { exit_code = CmdValidate(c, doc_ids, validate_all); });

  std::string truth_dir, sim_out = "-";
  uint64_t sim_seed = 1;
  bool validate_rest = false;
  auto* sim = app.add_subcommand(
      "simulate-review", "Review a synthetic source from its manifests");
  add_root(sim);
  add_source(sim, true);
  sim->add_option("--truth", truth_dir, "Generator output for the source")
      ->required();
  sim->add_option("--seed", sim_seed, "Review order seed");
  sim->add_flag("--validate-rest", validate_rest,
                "Also correct and validate the held-out documents");
  sim->add_option("--out", sim_out, "JSON result path");
  sim->callback([&] {
    exit_code = CmdSimulate(c, truth_dir, sim_seed, validate_rest, sim_out);
  });

  std::string score_out = "-";
  auto* score = app.add_subcommand(
      "score", "Score extraction against generator manifests");
  add_root(score);
  add_source(score, true);
  score->add_option("--truth", truth_dir, "Generator output for the source")
      ->required();
  score->add_option("--out", score_out, "JSON report path");
  score->callback([&] { exit_code = CmdScore(c, truth_dir, score_out); });

  auto* fetch = app.add_subcommand("fetch", "Download and ingest a source");
  add_root(fetch);
  add_source(fetch, true);
  fetch->callback([&] { exit_code = CmdFetch(c); });

  std::string host = "127.0.0.1", ui;
  int port = service::kDefaultPort;
  auto* serve = app.add_subcommand("serve", "Run the curation HTTP service");
  add_root(serve);
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (DLA_PORT overrides)");
  serve->add_option("--ui", ui, "Directory of the built review UI");
  serve->callback([&] { exit_code = CmdServe(c, host, port, ui); });

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
