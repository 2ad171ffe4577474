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

#include "dla/corpus/profile.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "dla/core/strings.h"
#include "dla/corpus/toml.h"

namespace dla::corpus {
namespace {

absl::Status TypeError(std::string_view key, std::string_view want) {
  return absl::InvalidArgumentError(
      absl::StrCat("profile key '", ToAbsl(key), "' must be ", ToAbsl(want)));
}

class Reader {
 public:
  explicit Reader(const TomlDocument& doc) : doc_(doc) {}

  absl::Status String(const std::string& key, std::string* out) {
    auto it = doc_.find(key);
    if (it == doc_.end()) return absl::OkStatus();
    const auto* v = std::get_if<std::string>(&it->second.value);
    if (v == nullptr) return TypeError(key, "a string");
    *out = *v;
    return absl::OkStatus();
  }

  absl::Status Bool(const std::string& key, bool* out) {
    auto it = doc_.find(key);
    if (it == doc_.end()) return absl::OkStatus();
    const auto* v = std::get_if<bool>(&it->second.value);
    if (v == nullptr) return TypeError(key, "a boolean");
    *out = *v;
    return absl::OkStatus();
  }

  absl::Status Int(const std::string& key, int* out) {
    auto it = doc_.find(key);
    if (it == doc_.end()) return absl::OkStatus();
    const auto* v = std::get_if<int64_t>(&it->second.value);
    if (v == nullptr) return TypeError(key, "an integer");
    *out = static_cast<int>(*v);
    return absl::OkStatus();
  }

  absl::Status Double(const std::string& key, double* out) {
    auto it = doc_.find(key);
    if (it == doc_.end()) return absl::OkStatus();
    if (const auto* d = std::get_if<double>(&it->second.value)) {
      *out = *d;
    } else if (const auto* i = std::get_if<int64_t>(&it->second.value)) {
      *out = static_cast<double>(*i);
    } else {
      return TypeError(key, "a number");
    }
    return absl::OkStatus();
  }

  absl::Status Strings(const std::string& key, std::vector<std::string>* out) {
    auto it = doc_.find(key);
    if (it == doc_.end()) return absl::OkStatus();
    const auto* arr = std::get_if<TomlArray>(&it->second.value);
    if (arr == nullptr) return TypeError(key, "an array of strings");
    out->clear();
    for (const TomlValue& v : *arr) {
      const auto* s = std::get_if<std::string>(&v.value);
      if (s == nullptr) return TypeError(key, "an array of strings");
      out->push_back(*s);
    }
    return absl::OkStatus();
  }

 private:
  const TomlDocument& doc_;
};

std::string QuotedList(const std::vector<std::string>& items) {
  std::vector<std::string> quoted;
  for (const std::string& s : items) quoted.push_back(TomlQuote(s));
  return absl::StrCat("[", absl::StrJoin(quoted, ", "), "]");
}

}  // namespace

absl::Status ValidateProfile(const SourceProfile& p) {
  if (p.source_id.empty()) {
    return absl::InvalidArgumentError("profile has no source_id");
  }
  for (char c : p.source_id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_';
    if (!ok) {
      return absl::InvalidArgumentError(
          absl::StrCat("invalid source_id '", p.source_id, "'"));
    }
  }
  if (p.fetch.rate_limit_seconds < 1.0) {
    return absl::InvalidArgumentError(
        "fetch.rate_limit_seconds must be at least 1");
  }
  if (p.fetch.max_retries < 0) {
    return absl::InvalidArgumentError("fetch.max_retries must be >= 0");
  }
  if (!(p.gap_factor > 0.0)) {
    return absl::InvalidArgumentError("extract.gap_factor must be positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<SourceProfile> ParseProfile(std::string_view toml) {
  auto doc = ParseToml(toml);
  if (!doc.ok()) return doc.status();
  SourceProfile p;
  Reader r(*doc);
  for (absl::Status s :
       {r.String("source_id", &p.source_id), r.String("name", &p.name),
        r.Strings("languages", &p.languages),
        r.String("ruleset", &p.ruleset_path), r.String("fonts", &p.fonts_path),
        r.String("model", &p.model_path), r.Int("min_year", &p.min_year),
        r.Bool("extract.reconstruct_words", &p.reconstruct_words),
        r.Double("extract.gap_factor", &p.gap_factor),
        r.Bool("fetch.enabled", &p.fetch.enabled),
        r.Strings("fetch.urls", &p.fetch.urls),
        r.Int("fetch.max_documents", &p.fetch.max_documents),
        r.Double("fetch.rate_limit_seconds", &p.fetch.rate_limit_seconds),
        r.Int("fetch.max_retries", &p.fetch.max_retries),
        r.Double("fetch.backoff_seconds", &p.fetch.backoff_seconds)}) {
    if (!s.ok()) return s;
  }
  if (auto s = ValidateProfile(p); !s.ok()) return s;
  return p;
}

std::string SerializeProfile(const SourceProfile& p) {
  return absl::StrCat(
      "source_id = ", TomlQuote(p.source_id), "\n",
      "name = ", TomlQuote(p.name), "\n",
      "languages = ", QuotedList(p.languages), "\n",
      "ruleset = ", TomlQuote(p.ruleset_path), "\n",
      "fonts = ", TomlQuote(p.fonts_path), "\n",
      "model = ", TomlQuote(p.model_path), "\n",
      "min_year = ", p.min_year, "\n",
      "\n[extract]\n",
      "reconstruct_words = ", p.reconstruct_words ? "true" : "false", "\n",
      "gap_factor = ", absl::StrFormat("%.6g", p.gap_factor), "\n",
      "\n[fetch]\n",
      "enabled = ", p.fetch.enabled ? "true" : "false", "\n",
      "urls = ", QuotedList(p.fetch.urls), "\n",
      "max_documents = ", p.fetch.max_documents, "\n",
      "rate_limit_seconds = ",
      absl::StrFormat("%.6g", p.fetch.rate_limit_seconds), "\n",
      "max_retries = ", p.fetch.max_retries, "\n",
      "backoff_seconds = ", absl::StrFormat("%.6g", p.fetch.backoff_seconds),
      "\n");
}

}  // namespace dla::corpus
