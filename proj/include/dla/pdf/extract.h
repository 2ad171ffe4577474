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

// Native-PDF extraction: pages, positioned text spans with font attributes,
// image placements, URI link annotations and the stroked line art used for
// table detection.

#ifndef DLA_PDF_EXTRACT_H_
#define DLA_PDF_EXTRACT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/time/civil_time.h"
#include "dla/core/layout.h"

namespace dla::pdf {

// A straight stroke (or hairline fill) in page coordinates.
struct Segment {
  Point a;
  Point b;
  double width = 0.0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct ParsedPage {
  PageGeometry geometry;
  // Text runs with `line_id` assigned; ordered by line, then along the line.
  std::vector<TextSpan> spans;
  std::vector<LayoutBlock> image_blocks;
  std::vector<LayoutBlock> link_blocks;
  std::vector<Segment> segments;
  std::vector<std::string> warnings;
};

struct ParsedDocument {
  std::string doc_id;
  std::string source_id;
  std::string content_hash;  // Hex SHA-256 of the input bytes.
  std::vector<ParsedPage> pages;
  std::optional<absl::CivilDay> publication_date;
  std::vector<std::string> warnings;
};

struct ExtractOptions {
  // Collapse each line into a single span joined with spaces, for producers
  // that place every word separately without space glyphs.
  bool reconstruct_words = false;
  // Used as a fallback source for the publication date.
  std::string file_name;
};

// Parses a native PDF. Malformed input yields InvalidArgument carrying the
// byte offset (see errors.h); encrypted files yield Unimplemented. Pages whose
// content cannot be decoded are kept empty with a warning.
absl::StatusOr<ParsedDocument> ParseDocument(std::string_view bytes,
                                             std::string_view source_id,
                                             const ExtractOptions& options = {});

// "D:YYYYMMDD..." style PDF date strings.
std::optional<absl::CivilDay> ParsePdfDate(std::string_view s);
// First YYYY-MM-DD, YYYY_MM_DD or YYYYMMDD date embedded in a file name.
std::optional<absl::CivilDay> DateFromFileName(std::string_view name);

// Stable document identifier derived from source and content hash.
std::string MakeDocId(std::string_view source_id, std::string_view hash);

}  // namespace dla::pdf

#endif  // DLA_PDF_EXTRACT_H_
