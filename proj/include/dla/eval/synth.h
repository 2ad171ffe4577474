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

// Synthetic gazette generator with ground-truth manifests.
//
// Every generated document is a native PDF plus a manifest listing each
// block the pipeline is expected to find: its kind, label, page-frame bbox
// and text (or URI, or logical table cells).

#ifndef DLA_EVAL_SYNTH_H_
#define DLA_EVAL_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/core/layout.h"
#include "dla/corpus/profile.h"
#include "json.hpp"

namespace dla::eval {

struct TextStyle {
  std::string font;  // Base font name.
  double size = 10.0;
};

struct SynthTemplate {
  std::string source_id;
  std::string name;  // Gazette title printed in the masthead.
  double page_width = 595.0;
  double page_height = 842.0;
  int min_pages = 4;
  int max_pages = 13;
  int columns = 1;
  double gutter = 27.0;

  TextStyle masthead{"Helvetica", 9.0};
  TextStyle title{"Helvetica-Bold", 13.0};
  TextStyle summary{"Times-Italic", 11.0};
  TextStyle body{"Times-Roman", 10.0};
  TextStyle cell{"Courier", 8.0};
  // Alternative faces used by style violations.
  TextStyle title_plain{"Helvetica", 13.0};
  TextStyle summary_plain{"Times-Roman", 11.0};
  TextStyle body_bold{"Times-Bold", 10.0};
  TextStyle body_italic{"Times-Italic", 10.0};

  // Embed FontDescriptors for the custom (non-standard) faces.
  bool custom_fonts = false;
  // Rules drawn as thin filled rectangles instead of strokes.
  bool filled_rules = false;

  double summary_probability = 0.5;
  double table_probability = 0.15;
  double image_probability = 0.1;
  // Chance that a page is followed by a full-page rotated table.
  double rotated_table_probability = 0.0;
  // Chance that a table slot holds two tables.
  double double_table_probability = 0.0;

  // Noise.
  double position_jitter = 0.0;  // Points, per block.
  double size_jitter = 0.0;      // Points, per block.
  double style_violation_probability = 0.0;
  // One show operator per word with no space glyphs.
  bool word_per_show = false;
};

// The three reference templates: a clean single-column gazette, a
// two-column gazette with custom fonts and rotated tables, and a noisy
// variant with style violations and spaceless word placement.
SynthTemplate CleanTemplate();
SynthTemplate TwoColumnTemplate();
SynthTemplate HardTemplate();
std::vector<SynthTemplate> DefaultTemplates();

// Starter heuristic rules for a template, in rule-file syntax.
std::string StarterRules(const SynthTemplate& t);

// Source profile matching a template's PDF conventions.
corpus::SourceProfile TemplateProfile(const SynthTemplate& t);

struct SynthBlock {
  int page = 0;
  BlockKind kind = BlockKind::kText;
  LayoutLabel label = LayoutLabel::kBody;
  BoundingBox bbox;
  std::string text;  // Text payload or link URI.
  int column = -1;   // Flow column, -1 for full-width blocks.
  bool style_violation = false;
  // Tables: logical cells and page rotation of the text.
  std::vector<std::vector<std::string>> cells;
  int rotation = 0;

  friend bool operator==(const SynthBlock&, const SynthBlock&) = default;
};

struct SynthManifest {
  std::string source_id;
  std::string file_name;
  std::string creation_date;  // YYYY-MM-DD.
  int page_count = 0;
  double page_width = 0.0;
  double page_height = 0.0;
  bool reconstruct_words = false;
  std::vector<SynthBlock> blocks;

  int TokenCount() const;

  friend bool operator==(const SynthManifest&, const SynthManifest&) = default;
};

struct SynthDocument {
  std::string pdf;
  SynthManifest manifest;
};

struct GenerateOptions {
  uint64_t seed = 1;
  // Overrides the random publication year.
  std::optional<int> year;
};

SynthDocument GenerateDocument(const SynthTemplate& t, int index,
                               const GenerateOptions& options);

nlohmann::json ManifestToJson(const SynthManifest& m);
absl::StatusOr<SynthManifest> ManifestFromJson(const nlohmann::json& j);

// Writes <out>/<source_id>/<file_name> and the matching .json manifest for
// `docs_per_source` documents of every template, plus profile.toml and
// rules.txt for each source.
absl::Status WriteSyntheticCorpus(const std::vector<SynthTemplate>& templates,
                                  int docs_per_source, uint64_t seed,
                                  const std::filesystem::path& out);

// Loads every manifest under <dir> (recursively), sorted by file name.
absl::StatusOr<std::vector<SynthManifest>> LoadManifests(
    const std::filesystem::path& dir);

}  // namespace dla::eval

#endif  // DLA_EVAL_SYNTH_H_
