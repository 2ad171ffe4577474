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

#ifndef DLA_PDF_ERRORS_H_
#define DLA_PDF_ERRORS_H_

#include <cstddef>
#include <optional>
#include <string_view>

#include "absl/status/status.h"

namespace dla::pdf {

// Malformed input. The returned status is InvalidArgument and carries the
// byte offset as a payload.
absl::Status MalformedPdfError(size_t offset, std::string_view message);

// Byte offset attached by MalformedPdfError, if any.
std::optional<size_t> ErrorByteOffset(const absl::Status& status);

// Documents the extractor refuses to handle (encrypted files).
absl::Status UnsupportedDocumentError(std::string_view message);

bool IsUnsupportedDocument(const absl::Status& status);

}  // namespace dla::pdf

#endif  // DLA_PDF_ERRORS_H_
