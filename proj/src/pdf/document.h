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

// File-structure layer: cross-reference tables and streams, object streams,
// incremental updates, and the page tree. Falls back to a linear object scan
// when the cross-reference data is damaged.

#ifndef DLA_SRC_PDF_DOCUMENT_H_
#define DLA_SRC_PDF_DOCUMENT_H_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/pdf/object.h"

namespace dla::pdf {

struct PageRecord {
  Dict dict;
  Dict resources;
  double box[4] = {0, 0, 612, 792};  // llx lly urx ury, in user space.
  int rotate = 0;
};

class Document {
 public:
  // `data` must outlive the document.
  static absl::StatusOr<std::unique_ptr<Document>> Open(std::string_view data);

  Document(const Document&) = delete;
  Document& operator=(const Document&) = delete;

  // Follows indirect references; unresolvable references become null.
  Object Resolve(const Object& o) const;
  // Resolved value of `key`, or null.
  Object Get(const Dict& dict, std::string_view key) const;

  // Decoded content of a stream.
  absl::StatusOr<std::string> StreamData(const Stream& stream) const;

  absl::StatusOr<std::vector<PageRecord>> Pages() const;

  const Dict& trailer() const { return trailer_; }
  // The /Info dictionary, if any.
  Dict Info() const;
  bool rebuilt() const { return rebuilt_; }

 private:
  struct XrefEntry {
    enum class Kind { kOffset, kCompressed } kind = Kind::kOffset;
    size_t offset = 0;
    int stream_num = 0;
    int index = 0;
  };

  explicit Document(std::string_view data) : data_(data) {}

  absl::Status LoadXrefChain(size_t offset);
  absl::Status LoadXrefTable(size_t offset, Dict* trailer);
  absl::Status LoadXrefStream(size_t offset, Dict* trailer);
  absl::Status Rebuild();

  absl::StatusOr<Object> LoadObject(int num) const;
  absl::StatusOr<Object> ParseIndirectAt(size_t offset, int* num) const;
  absl::StatusOr<Object> LoadFromObjectStream(int stream_num, int num) const;
  size_t FindEndstream(size_t from) const;

  void CollectPages(const Object& node, const Dict& inherited_resources,
                    const double* inherited_box, int inherited_rotate,
                    std::set<int>* visited, std::vector<PageRecord>* out,
                    int depth) const;

  std::string_view data_;
  std::map<int, XrefEntry> xref_;
  Dict trailer_;
  bool rebuilt_ = false;

  mutable std::map<int, Object> cache_;
  mutable std::set<int> loading_;
  mutable std::map<int, std::map<int, Object>> object_streams_;
};

}  // namespace dla::pdf

#endif  // DLA_SRC_PDF_DOCUMENT_H_
