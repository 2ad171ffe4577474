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

#include "dla/corpus/fetch.h"

#include <curl/curl.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "glog/logging.h"

namespace dla::corpus {
namespace {

size_t Collect(char* data, size_t size, size_t n, void* user) {
  static_cast<std::string*>(user)->append(data, size * n);
  return size * n;
}

void InitCurlOnce() {
  static const bool initialized = [] {
    curl_global_init(CURL_GLOBAL_DEFAULT);
    return true;
  }();
  (void)initialized;
}

}  // namespace

CurlTransport::CurlTransport(long timeout_seconds)
    : timeout_seconds_(timeout_seconds) {
  InitCurlOnce();
}

absl::StatusOr<std::string> CurlTransport::Get(const std::string& url) {
  CURL* curl = curl_easy_init();
  if (curl == nullptr) return absl::InternalError("curl_easy_init failed");
  std::string body;
  curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl, CURLOPT_TIMEOUT, timeout_seconds_);
  curl_easy_setopt(curl, CURLOPT_USERAGENT, "dla-fetcher/1.0");
  curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, &Collect);
  curl_easy_setopt(curl, CURLOPT_WRITEDATA, &body);
  const CURLcode rc = curl_easy_perform(curl);
  long http = 0;
  curl_easy_getinfo(curl, CURLINFO_RESPONSE_CODE, &http);
  curl_easy_cleanup(curl);
  if (rc != CURLE_OK) {
    return absl::UnavailableError(
        absl::StrCat(url, ": ", curl_easy_strerror(rc)));
  }
  if (http >= 400) {
    return absl::UnavailableError(absl::StrCat(url, ": HTTP ", http));
  }
  return body;
}

double SystemClock::NowSeconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void SystemClock::SleepSeconds(double s) {
  if (s > 0) std::this_thread::sleep_for(std::chrono::duration<double>(s));
}

PoliteFetcher::PoliteFetcher(const FetchConfig& config,
                             HttpTransport* transport, Clock* clock)
    : config_(config),
      transport_(transport),
      clock_(clock),
      min_interval_(std::max(1.0, config.rate_limit_seconds)) {}

absl::StatusOr<std::string> PoliteFetcher::Fetch(const std::string& url,
                                                 int* attempts) {
  absl::Status last = absl::UnknownError("no attempt made");
  const int max_attempts = 1 + std::max(0, config_.max_retries);
  for (int k = 0; k < max_attempts; ++k) {
    if (k > 0) {
      clock_->SleepSeconds(config_.backoff_seconds * std::pow(2.0, k - 1));
    }
    if (last_request_) {
      const double wait = *last_request_ + min_interval_ - clock_->NowSeconds();
      if (wait > 0) clock_->SleepSeconds(wait);
    }
    last_request_ = clock_->NowSeconds();
    if (attempts != nullptr) *attempts = k + 1;
    auto body = transport_->Get(url);
    if (body.ok()) return body;
    last = body.status();
    LOG(WARNING) << "fetch attempt " << k + 1 << " of " << max_attempts
                 << " failed: " << last;
  }
  return last;
}

std::vector<std::string> ExpandUrls(const FetchConfig& config) {
  std::vector<std::string> out;
  for (const std::string& t : config.urls) {
    if (t.find("{n}") == std::string::npos) {
      out.push_back(t);
      continue;
    }
    for (int n = 1; n <= config.max_documents; ++n) {
      out.push_back(absl::StrReplaceAll(t, {{"{n}", absl::StrCat(n)}}));
    }
  }
  return out;
}

absl::StatusOr<FetchSummary> FetchSource(CorpusStore* store,
                                         Ingestor* ingestor,
                                         PoliteFetcher* fetcher) {
  const SourceProfile& profile = ingestor->profile();
  if (!profile.fetch.enabled) {
    return absl::FailedPreconditionError(absl::StrCat(
        "fetching is disabled for source '", profile.source_id, "'"));
  }
  FetchSummary summary;
  for (const std::string& url : ExpandUrls(profile.fetch)) {
    ++summary.requested;
    int attempts = 0;
    auto body = fetcher->Fetch(url, &attempts);
    absl::Status failure;
    std::string stage = "fetch";
    if (body.ok()) {
      const std::string name = url.substr(url.find_last_of('/') + 1);
      auto result = ingestor->Ingest({*std::move(body), url, name});
      if (result.ok()) {
        switch (result->outcome) {
          case IngestOutcome::kIngested:
            ++summary.ingested;
            break;
          case IngestOutcome::kDuplicate:
            ++summary.duplicates;
            break;
          case IngestOutcome::kFiltered:
            ++summary.filtered;
            break;
        }
        continue;
      }
      failure = result.status();
      stage = "ingest";
    } else {
      failure = body.status();
    }
    ++summary.dead_lettered;
    nlohmann::json entry = {{"url", url},
                            {"source_id", profile.source_id},
                            {"stage", stage},
                            {"attempts", attempts},
                            {"error", std::string(failure.message())}};
    if (auto s = store->AppendDeadLetter(entry); !s.ok()) return s;
  }
  return summary;
}

}  // namespace dla::corpus
