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

#ifndef DLA_SRC_PDF_FILTERS_H_
#define DLA_SRC_PDF_FILTERS_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "dla/pdf/object.h"

namespace dla::pdf {

absl::StatusOr<std::string> FlateDecode(std::string_view data);
std::string FlateEncode(std::string_view data);
absl::StatusOr<std::string> AsciiHexDecode(std::string_view data);
absl::StatusOr<std::string> Ascii85Decode(std::string_view data);
absl::StatusOr<std::string> LzwDecode(std::string_view data, int early_change);

// Undoes PNG (10..15) and TIFF (2) predictors described by `params`.
absl::StatusOr<std::string> ApplyPredictor(std::string data,
                                           const Dict& params);

// Applies the filter chain; `filter` is a name or array of names and
// `params` a dictionary, array of dictionaries, or null. Image codecs
// (DCT, JPX, CCITT, JBIG2) are not decoded and yield Unimplemented.
absl::StatusOr<std::string> DecodeFilters(std::string data,
                                          const Object& filter,
                                          const Object& params);

}  // namespace dla::pdf

#endif  // DLA_SRC_PDF_FILTERS_H_
