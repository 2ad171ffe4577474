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

#include "src/pdf/filters.h"

#include <zlib.h>

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "src/pdf/lexer.h"

namespace dla::pdf {
namespace {

int ParamInt(const Dict& params, std::string_view key, int fallback) {
  const Object* o = Find(params, key);
  if (o == nullptr) return fallback;
  return static_cast<int>(o->AsInt().value_or(fallback));
}

}  // namespace

absl::StatusOr<std::string> FlateDecode(std::string_view data) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) return absl::InternalError("inflateInit");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  std::string out;
  char buffer[1 << 15];
  int rc = Z_OK;
  while (rc == Z_OK) {
    zs.next_out = reinterpret_cast<Bytef*>(buffer);
    zs.avail_out = sizeof(buffer);
    rc = inflate(&zs, Z_NO_FLUSH);
    out.append(buffer, sizeof(buffer) - zs.avail_out);
    if (rc == Z_BUF_ERROR && zs.avail_in == 0) break;
  }
  inflateEnd(&zs);
  // Truncated streams are common; keep whatever decoded cleanly.
  if (rc != Z_STREAM_END && out.empty()) {
    return absl::DataLossError(absl::StrCat("flate stream corrupt (zlib ", rc,
                                            ")"));
  }
  return out;
}

std::string FlateEncode(std::string_view data) {
  uLongf bound = compressBound(static_cast<uLong>(data.size()));
  std::string out(bound, '\0');
  compress2(reinterpret_cast<Bytef*>(out.data()), &bound,
            reinterpret_cast<const Bytef*>(data.data()),
            static_cast<uLong>(data.size()), Z_BEST_COMPRESSION);
  out.resize(bound);
  return out;
}

absl::StatusOr<std::string> AsciiHexDecode(std::string_view data) {
  std::string out;
  int pending = -1;
  for (char c : data) {
    if (c == '>') break;
    if (IsPdfWhitespace(c)) continue;
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      return absl::DataLossError("bad ASCIIHex digit");
    }
    if (pending < 0) {
      pending = v;
    } else {
      out.push_back(static_cast<char>(pending * 16 + v));
      pending = -1;
    }
  }
  if (pending >= 0) out.push_back(static_cast<char>(pending * 16));
  return out;
}

absl::StatusOr<std::string> Ascii85Decode(std::string_view data) {
  std::string out;
  uint32_t tuple = 0;
  int count = 0;
  size_t i = 0;
  if (data.substr(0, 2) == "<~") i = 2;
  for (; i < data.size(); ++i) {
    const char c = data[i];
    if (c == '~') break;
    if (IsPdfWhitespace(c)) continue;
    if (c == 'z' && count == 0) {
      out.append(4, '\0');
      continue;
    }
    if (c < '!' || c > 'u') return absl::DataLossError("bad ASCII85 digit");
    tuple = tuple * 85 + static_cast<uint32_t>(c - '!');
    if (++count == 5) {
      for (int k = 3; k >= 0; --k) {
        out.push_back(static_cast<char>((tuple >> (8 * k)) & 0xFF));
      }
      tuple = 0;
      count = 0;
    }
  }
  if (count > 1) {
    for (int k = count; k < 5; ++k) tuple = tuple * 85 + 84;
    for (int k = 0; k < count - 1; ++k) {
      out.push_back(static_cast<char>((tuple >> (8 * (3 - k))) & 0xFF));
    }
  }
  return out;
}

absl::StatusOr<std::string> LzwDecode(std::string_view data,
                                      int early_change) {
  std::vector<std::string> table;
  auto reset = [&] {
    table.clear();
    for (int i = 0; i < 256; ++i) table.emplace_back(1, static_cast<char>(i));
    table.emplace_back();  // 256 clear
    table.emplace_back();  // 257 EOD
  };
  reset();
  std::string out;
  std::string previous;
  int code_len = 9;
  uint32_t buffer = 0;
  int bits = 0;
  size_t i = 0;
  while (true) {
    while (bits < code_len && i < data.size()) {
      buffer = (buffer << 8) | static_cast<unsigned char>(data[i++]);
      bits += 8;
    }
    if (bits < code_len) break;
    const int code = static_cast<int>((buffer >> (bits - code_len)) &
                                      ((1u << code_len) - 1));
    bits -= code_len;
    if (code == 256) {
      reset();
      code_len = 9;
      previous.clear();
      continue;
    }
    if (code == 257) break;
    std::string entry;
    if (code < static_cast<int>(table.size())) {
      entry = table[code];
    } else if (code == static_cast<int>(table.size()) && !previous.empty()) {
      entry = previous + previous[0];
    } else {
      return absl::DataLossError("bad LZW code");
    }
    out += entry;
    if (!previous.empty()) table.push_back(previous + entry[0]);
    previous = entry;
    const int limit = static_cast<int>(table.size()) + early_change;
    if (limit >= 512 && code_len == 9) code_len = 10;
    if (limit >= 1024 && code_len == 10) code_len = 11;
    if (limit >= 2048 && code_len == 11) code_len = 12;
  }
  return out;
}

absl::StatusOr<std::string> ApplyPredictor(std::string data,
                                           const Dict& params) {
  const int predictor = ParamInt(params, "Predictor", 1);
  if (predictor <= 1) return data;
  const int colors = ParamInt(params, "Colors", 1);
  const int bpc = ParamInt(params, "BitsPerComponent", 8);
  const int columns = ParamInt(params, "Columns", 1);
  const int bpp = std::max(1, (colors * bpc + 7) / 8);
  const int row_len = (colors * bpc * columns + 7) / 8;
  if (row_len <= 0) return absl::DataLossError("bad predictor row length");

  if (predictor == 2) {
    if (bpc != 8) return absl::UnimplementedError("TIFF predictor bpc != 8");
    for (size_t row = 0; row + row_len <= data.size(); row += row_len) {
      for (int k = bpp; k < row_len; ++k) {
        data[row + k] = static_cast<char>(data[row + k] + data[row + k - bpp]);
      }
    }
    return data;
  }

  std::string out;
  std::vector<unsigned char> prev(row_len, 0), cur(row_len, 0);
  size_t pos = 0;
  while (pos < data.size()) {
    const int type = static_cast<unsigned char>(data[pos++]);
    const size_t n = std::min<size_t>(row_len, data.size() - pos);
    std::fill(cur.begin(), cur.end(), 0);
    for (size_t k = 0; k < n; ++k) cur[k] = static_cast<unsigned char>(data[pos + k]);
    pos += n;
    for (int k = 0; k < row_len; ++k) {
      const int left = k >= bpp ? cur[k - bpp] : 0;
      const int up = prev[k];
      const int up_left = k >= bpp ? prev[k - bpp] : 0;
      int v = cur[k];
      switch (type) {
        case 0:
          break;
        case 1:
          v += left;
          break;
        case 2:
          v += up;
          break;
        case 3:
          v += (left + up) / 2;
          break;
        case 4: {
          const int p = left + up - up_left;
          const int pa = std::abs(p - left);
          const int pb = std::abs(p - up);
          const int pc = std::abs(p - up_left);
          v += (pa <= pb && pa <= pc) ? left : (pb <= pc ? up : up_left);
          break;
        }
        default:
          return absl::DataLossError(
              absl::StrCat("bad PNG predictor row type ", type));
      }
      cur[k] = static_cast<unsigned char>(v & 0xFF);
    }
    out.append(reinterpret_cast<const char*>(cur.data()), row_len);
    std::swap(prev, cur);
  }
  return out;
}

absl::StatusOr<std::string> DecodeFilters(std::string data,
                                          const Object& filter,
                                          const Object& params) {
  std::vector<std::string> names;
  std::vector<const Dict*> parms;
  if (const auto* n = filter.AsName()) {
    names.push_back(*n);
    parms.push_back(params.AsDict());
  } else if (const auto* a = filter.AsArray()) {
    const Array* pa = params.AsArray();
    for (size_t i = 0; i < a->size(); ++i) {
      const auto* n2 = (*a)[i].AsName();
      if (n2 == nullptr) return absl::DataLossError("filter is not a name");
      names.push_back(*n2);
      parms.push_back(pa != nullptr && i < pa->size() ? (*pa)[i].AsDict()
                                                      : nullptr);
    }
  }
  static const Dict kEmpty;
  for (size_t i = 0; i < names.size(); ++i) {
    const std::string& name = names[i];
    const Dict& p = parms[i] != nullptr ? *parms[i] : kEmpty;
    absl::StatusOr<std::string> next;
    if (name == "FlateDecode" || name == "Fl") {
      next = FlateDecode(data);
      if (next.ok()) next = ApplyPredictor(*std::move(next), p);
    } else if (name == "LZWDecode" || name == "LZW") {
      next = LzwDecode(data, ParamInt(p, "EarlyChange", 1));
      if (next.ok()) next = ApplyPredictor(*std::move(next), p);
    } else if (name == "ASCIIHexDecode" || name == "AHx") {
      next = AsciiHexDecode(data);
    } else if (name == "ASCII85Decode" || name == "A85") {
      next = Ascii85Decode(data);
    } else {
      return absl::UnimplementedError(absl::StrCat("filter ", name));
    }
    if (!next.ok()) return next.status();
    data = *std::move(next);
  }
  return data;
}

}  // namespace dla::pdf
