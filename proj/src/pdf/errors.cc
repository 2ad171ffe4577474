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

#include "dla/pdf/errors.h"

#include <string>

#include "absl/strings/cord.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "dla/core/strings.h"

namespace dla::pdf {
namespace {

constexpr char kOffsetPayload[] = "dla.pdf/byte-offset";
constexpr char kUnsupportedPayload[] = "dla.pdf/unsupported";

}  // namespace

absl::Status MalformedPdfError(size_t offset, std::string_view message) {
  absl::Status status = absl::InvalidArgumentError(
      absl::StrCat("malformed PDF at byte ", offset, ": ", ToAbsl(message)));
  status.SetPayload(kOffsetPayload, absl::Cord(absl::StrCat(offset)));
  return status;
}

std::optional<size_t> ErrorByteOffset(const absl::Status& status) {
  const auto payload = status.GetPayload(kOffsetPayload);
  if (!payload) return std::nullopt;
  size_t offset = 0;
  if (!absl::SimpleAtoi(std::string(*payload), &offset)) return std::nullopt;
  return offset;
}

absl::Status UnsupportedDocumentError(std::string_view message) {
  absl::Status status = absl::UnimplementedError(
      absl::StrCat("unsupported document: ", ToAbsl(message)));
  status.SetPayload(kUnsupportedPayload, absl::Cord("1"));
  return status;
}

bool IsUnsupportedDocument(const absl::Status& status) {
  return status.GetPayload(kUnsupportedPayload).has_value();
}

}  // namespace dla::pdf
