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

// HTTP/1.1 API over a Curator.
//
//   GET  /api/health
//   GET  /api/sources
//   GET  /api/sources/{id}/status
//   POST /api/sources/{id}/train
//   GET  /api/stats[?source=]
//   GET  /api/documents?source=&status=&limit=&cursor=    (NDJSON)
//   GET  /api/documents/{id}
//   GET  /api/documents/{id}/pages/{n}
//   GET  /api/documents/{id}/pages/{n}/overlay.svg
//   POST /api/documents/{id}/blocks/{bid}/label   {"action":"cycle"} or
//                                                 {"label":"summary"}
//   POST /api/documents/{id}/blocks/{bid}/revert
//   POST /api/documents/{id}/validate
//
// Single objects are JSON. The document list is NDJSON: one
// {"record":"manifest",...} line per document followed by one
// {"record":"cursor","next":...} line. Errors are
// {"error":{"code":...,"message":...}} with 400, 404 or 409. Every response
// carries the header X-DLA-Schema: 1.

#ifndef DLA_SERVICE_SERVER_H_
#define DLA_SERVICE_SERVER_H_

#include <memory>
#include <optional>
#include <string>

#include "dla/service/curator.h"

namespace dla::service {

inline constexpr int kDefaultPort = 8080;
inline constexpr int kDefaultPageSize = 100;
inline constexpr char kSchemaVersion[] = "1";

// DLA_PORT, when set to a valid port, overrides `configured`.
int ResolvePort(int configured);

struct ServerOptions {
  // Directory of the built review UI, served at "/" when set.
  std::optional<std::string> ui_dir;
};

class ApiServer {
 public:
  ApiServer(Curator* curator, ServerOptions options = {});
  ~ApiServer();

  // Binds and serves until Stop(); returns false when binding fails.
  bool Listen(const std::string& host, int port);
  // Binds to a free port and returns it (or -1); serve with ServeBound().
  int BindAnyPort(const std::string& host);
  bool ServeBound();
  void Stop();

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace dla::service

#endif  // DLA_SERVICE_SERVER_H_
