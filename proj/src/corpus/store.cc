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

#include "dla/corpus/store.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "absl/strings/str_cat.h"
#include "dla/core/strings.h"

namespace dla::corpus {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr char kJournal[] = "journal.jsonl";
constexpr char kFiltered[] = "filtered.jsonl";
constexpr char kDeadLetter[] = "dead_letter.jsonl";

std::string TempSuffix() {
  static std::atomic<uint64_t> counter{0};
  std::ostringstream os;
  os << ".tmp." << std::this_thread::get_id() << "." << counter++;
  return os.str();
}

json StateToJson(const labeler::CurationState& s) {
  return {{"source_id", s.source_id},
          {"validated_docs", s.validated_docs},
          {"validated_pages", s.validated_pages},
          {"model_version", s.model_version},
          {"mode", std::string(labeler::LabelingModeName(s.mode))}};
}

absl::StatusOr<labeler::CurationState> StateFromJson(const json& j) {
  try {
    labeler::CurationState s;
    s.source_id = j.at("source_id").get<std::string>();
    for (const auto& d : j.at("validated_docs")) {
      s.validated_docs.insert(d.get<std::string>());
    }
    s.validated_pages = j.at("validated_pages").get<int>();
    s.model_version = j.at("model_version").get<int>();
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "model") {
      s.mode = labeler::LabelingMode::kModel;
    } else if (mode == "heuristic") {
      s.mode = labeler::LabelingMode::kHeuristic;
    } else {
      return absl::InvalidArgumentError(absl::StrCat("bad mode '", mode, "'"));
    }
    return s;
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad curation state: ", e.what()));
  }
}

}  // namespace

absl::Status WriteFileAtomic(const fs::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      return absl::InternalError(absl::StrCat(
          "cannot create ", path.parent_path().string(), ": ", ec.message()));
    }
  }
  const fs::path tmp = path.string() + TempSuffix();
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) return absl::InternalError(absl::StrCat("cannot open ", tmp.string()));
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    f.close();
    if (!f) {
      fs::remove(tmp, ec);
      return absl::InternalError(absl::StrCat("cannot write ", tmp.string()));
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return absl::InternalError(
        absl::StrCat("cannot rename onto ", path.string(), ": ", ec.message()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadFile(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

absl::StatusOr<std::unique_ptr<CorpusStore>> CorpusStore::Open(
    const fs::path& root) {
  std::error_code ec;
  for (const char* dir :
       {"sources", "docs", "layout", "tables", "overlays", "manifests"}) {
    fs::create_directories(root / dir, ec);
    if (ec) {
      return absl::InternalError(absl::StrCat("cannot create ",
                                              (root / dir).string(), ": ",
                                              ec.message()));
    }
  }
  return std::unique_ptr<CorpusStore>(new CorpusStore(root));
}

fs::path CorpusStore::SourceDir(std::string_view source_id) const {
  return root_ / "sources" / std::string(source_id);
}
fs::path CorpusStore::PdfPath(std::string_view doc_id) const {
  return root_ / "docs" / absl::StrCat(ToAbsl(doc_id), ".pdf");
}
fs::path CorpusStore::LayoutPath(std::string_view doc_id) const {
  return root_ / "layout" / absl::StrCat(ToAbsl(doc_id), ".jsonl");
}
fs::path CorpusStore::SidecarDir(std::string_view doc_id) const {
  return root_ / "layout" / absl::StrCat(ToAbsl(doc_id), ".text");
}
fs::path CorpusStore::ManifestPath(std::string_view doc_id) const {
  return root_ / "manifests" / absl::StrCat(ToAbsl(doc_id), ".json");
}
fs::path CorpusStore::OverlayDir(std::string_view doc_id) const {
  return root_ / "overlays" / std::string(doc_id);
}

absl::Status CorpusStore::PutSource(const SourceProfile& profile) {
  if (auto s = ValidateProfile(profile); !s.ok()) return s;
  return WriteFileAtomic(SourceDir(profile.source_id) / "profile.toml",
                         SerializeProfile(profile));
}

absl::StatusOr<SourceProfile> CorpusStore::GetSource(
    std::string_view source_id) const {
  auto text = ReadFile(SourceDir(source_id) / "profile.toml");
  if (!text.ok()) {
    return absl::NotFoundError(
        absl::StrCat("unknown source '", ToAbsl(source_id), "'"));
  }
  return ParseProfile(*text);
}

std::vector<std::string> CorpusStore::ListSources() const {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(root_ / "sources", ec)) {
    if (fs::exists(e.path() / "profile.toml")) {
      out.push_back(e.path().filename().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

absl::Status CorpusStore::PutRules(std::string_view source_id,
                                   std::string_view text) {
  if (auto parsed = labeler::ParseRules(text); !parsed.ok()) {
    return parsed.status();
  }
  auto profile = GetSource(source_id);
  if (!profile.ok()) return profile.status();
  return WriteFileAtomic(SourceDir(source_id) / profile->ruleset_path, text);
}

absl::StatusOr<labeler::HeuristicRuleSet> CorpusStore::LoadRules(
    std::string_view source_id) const {
  auto profile = GetSource(source_id);
  if (!profile.ok()) return profile.status();
  auto text = ReadFile(SourceDir(source_id) / profile->ruleset_path);
  if (!text.ok()) return text.status();
  return labeler::ParseRules(*text);
}

absl::StatusOr<features::FontDictionary> CorpusStore::LoadFonts(
    std::string_view source_id) const {
  auto profile = GetSource(source_id);
  if (!profile.ok()) return profile.status();
  const fs::path p = SourceDir(source_id) / profile->fonts_path;
  if (!fs::exists(p)) return features::FontDictionary();
  auto text = ReadFile(p);
  if (!text.ok()) return text.status();
  return features::FontDictionary::Parse(*text);
}

absl::Status CorpusStore::SaveFonts(std::string_view source_id,
                                    const features::FontDictionary& fonts) {
  auto profile = GetSource(source_id);
  if (!profile.ok()) return profile.status();
  return WriteFileAtomic(SourceDir(source_id) / profile->fonts_path,
                         fonts.Serialize());
}

absl::StatusOr<std::optional<labeler::ForestModel>> CorpusStore::LoadModel(
    std::string_view source_id) const {
  auto profile = GetSource(source_id);
  if (!profile.ok()) return profile.status();
  const fs::path p = SourceDir(source_id) / profile->model_path;
  if (!fs::exists(p)) return std::optional<labeler::ForestModel>();
  auto text = ReadFile(p);
  if (!text.ok()) return text.status();
  auto model = labeler::ForestModel::Parse(*text);
  if (!model.ok()) return model.status();
  return std::optional<labeler::ForestModel>(*std::move(model));
}

absl::Status CorpusStore::SaveModel(std::string_view source_id,
                                    const labeler::ForestModel& model) {
  auto profile = GetSource(source_id);
  if (!profile.ok()) return profile.status();
  return WriteFileAtomic(SourceDir(source_id) / profile->model_path,
                         model.Serialize());
}

absl::StatusOr<labeler::CurationState> CorpusStore::LoadState(
    std::string_view source_id) const {
  const fs::path p = SourceDir(source_id) / "state.json";
  if (!fs::exists(p)) {
    labeler::CurationState s;
    s.source_id = std::string(source_id);
    return s;
  }
  auto text = ReadFile(p);
  if (!text.ok()) return text.status();
  json j = json::parse(*text, nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat(p.string(), ": not valid JSON"));
  }
  return StateFromJson(j);
}

absl::Status CorpusStore::SaveState(const labeler::CurationState& state) {
  return WriteFileAtomic(SourceDir(state.source_id) / "state.json",
                         StateToJson(state).dump(2) + "\n");
}

bool CorpusStore::HasDocument(std::string_view doc_id) const {
  return fs::exists(ManifestPath(doc_id));
}

absl::Status CorpusStore::PutPdf(std::string_view doc_id,
                                 std::string_view bytes) {
  return WriteFileAtomic(PdfPath(doc_id), bytes);
}

void CorpusStore::ExportTables(DocumentLayout* layout,
                               std::vector<std::string>* warnings) const {
  for (LayoutRecord& r : layout->records) {
    if (r.block.kind != BlockKind::kTable || !r.table) continue;
    if (!r.block.payload || r.block.payload->empty()) continue;
    auto written =
        table::ExportCells(*r.table, (root_ / *r.block.payload).string());
    if (!written.ok()) {
      warnings->push_back(absl::StrCat("table ", r.block.block_id,
                                       ": CSV export failed: ",
                                       written.status().message()));
      r.block.payload = "";
    }
  }
}

absl::Status CorpusStore::WriteLayout(const DocumentLayout& layout) {
  Sidecars sidecars;
  const std::string text = SerializeLayout(layout, &sidecars);
  if (!sidecars.empty()) {
    const fs::path dir = SidecarDir(layout.doc_id);
    for (const auto& [block_id, payload] : sidecars) {
      if (auto s = WriteFileAtomic(dir / absl::StrCat(block_id, ".txt"),
                                   payload);
          !s.ok()) {
        return s;
      }
    }
  }
  return WriteFileAtomic(LayoutPath(layout.doc_id), text);
}

absl::StatusOr<DocumentLayout> CorpusStore::ReadLayout(
    std::string_view doc_id) const {
  auto text = ReadFile(LayoutPath(doc_id));
  if (!text.ok()) return text.status();
  const fs::path dir = SidecarDir(doc_id);
  return ParseLayout(*text, [&](const std::string& block_id) {
    return ReadFile(dir / absl::StrCat(block_id, ".txt"));
  });
}

absl::Status CorpusStore::WriteManifest(const DocumentManifest& manifest) {
  return WriteFileAtomic(ManifestPath(manifest.doc_id),
                         ManifestToJson(manifest).dump(2) + "\n");
}

absl::StatusOr<DocumentManifest> CorpusStore::ReadManifest(
    std::string_view doc_id) const {
  auto text = ReadFile(ManifestPath(doc_id));
  if (!text.ok()) return text.status();
  json j = json::parse(*text, nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat("manifest ", ToAbsl(doc_id), ": not valid JSON"));
  }
  return ManifestFromJson(j);
}

absl::StatusOr<std::vector<DocumentManifest>> CorpusStore::ListManifests(
    std::optional<std::string> source_id) const {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(root_ / "manifests", ec)) {
    if (e.path().extension() == ".json") {
      ids.push_back(e.path().stem().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  std::vector<DocumentManifest> out;
  for (const std::string& id : ids) {
    auto m = ReadManifest(id);
    if (!m.ok()) return m.status();
    if (source_id && m->source_id != *source_id) continue;
    out.push_back(*std::move(m));
  }
  return out;
}

absl::Status CorpusStore::Append(const std::string& name, const json& entry) {
  std::lock_guard<std::mutex> lock(log_mu_);
  std::ofstream f(root_ / name, std::ios::binary | std::ios::app);
  if (!f) return absl::InternalError(absl::StrCat("cannot open ", name));
  f << entry.dump() << "\n";
  f.close();
  if (!f) return absl::InternalError(absl::StrCat("cannot append to ", name));
  return absl::OkStatus();
}

absl::StatusOr<std::vector<json>> CorpusStore::ReadLog(
    const std::string& name) const {
  std::vector<json> out;
  const fs::path p = root_ / name;
  if (!fs::exists(p)) return out;
  std::ifstream f(p, std::ios::binary);
  std::string line;
  int n = 0;
  while (std::getline(f, line)) {
    ++n;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      return absl::InvalidArgumentError(
          absl::StrCat(name, " line ", n, ": not valid JSON"));
    }
    out.push_back(std::move(j));
  }
  return out;
}

absl::Status CorpusStore::AppendJournal(const json& entry) {
  return Append(kJournal, entry);
}
absl::StatusOr<std::vector<json>> CorpusStore::ReadJournal() const {
  return ReadLog(kJournal);
}
absl::Status CorpusStore::AppendFiltered(const json& entry) {
  return Append(kFiltered, entry);
}
absl::StatusOr<std::vector<json>> CorpusStore::ReadFiltered() const {
  return ReadLog(kFiltered);
}
absl::Status CorpusStore::AppendDeadLetter(const json& entry) {
  return Append(kDeadLetter, entry);
}

}  // namespace dla::corpus
