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

// Config-driven HTTP fetcher with a per-fetcher rate limit, retries with
// exponential backoff, and a dead-letter log for URLs that never succeed.

#ifndef DLA_CORPUS_FETCH_H_
#define DLA_CORPUS_FETCH_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dla/corpus/ingest.h"
#include "dla/corpus/profile.h"
#include "dla/corpus/store.h"

namespace dla::corpus {

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  // Body of a successful (2xx) GET.
  virtual absl::StatusOr<std::string> Get(const std::string& url) = 0;
};

// libcurl-backed transport. Follows redirects; HTTP errors map to
// Unavailable.
class CurlTransport : public HttpTransport {
 public:
  explicit CurlTransport(long timeout_seconds = 60);
  absl::StatusOr<std::string> Get(const std::string& url) override;

 private:
  long timeout_seconds_;
};

class Clock {
 public:
  virtual ~Clock() = default;
  virtual double NowSeconds() = 0;
  virtual void SleepSeconds(double s) = 0;
};

class SystemClock : public Clock {
 public:
  double NowSeconds() override;
  void SleepSeconds(double s) override;
};

// Request starts are spaced at least max(1, rate_limit_seconds) apart. A
// failed request is retried up to max_retries times, waiting
// backoff_seconds * 2^k before retry k (in addition to the rate limit).
class PoliteFetcher {
 public:
  PoliteFetcher(const FetchConfig& config, HttpTransport* transport,
                Clock* clock);

  // Returns the last error after the retries are exhausted.
  absl::StatusOr<std::string> Fetch(const std::string& url, int* attempts);

  double min_interval_seconds() const { return min_interval_; }

 private:
  FetchConfig config_;
  HttpTransport* transport_;
  Clock* clock_;
  double min_interval_;
  std::optional<double> last_request_;
};

// Expands "{n}" in each URL template to 1..max_documents; templates without
// the placeholder are used once.
std::vector<std::string> ExpandUrls(const FetchConfig& config);

struct FetchSummary {
  int requested = 0;
  int ingested = 0;
  int duplicates = 0;
  int filtered = 0;
  int dead_lettered = 0;
};

// Fetches every URL of the source's profile and ingests the bodies. URLs that
// fail to download or ingest are recorded in the dead-letter log. Returns
// FailedPrecondition when fetching is disabled for the source.
absl::StatusOr<FetchSummary> FetchSource(CorpusStore* store,
                                         Ingestor* ingestor,
                                         PoliteFetcher* fetcher);

}  // namespace dla::corpus

#endif  // DLA_CORPUS_FETCH_H_
