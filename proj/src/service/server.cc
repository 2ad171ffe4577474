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

#include "dla/service/server.h"

#include <cstdlib>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "dla/core/strings.h"
#include "dla/corpus/overlay.h"
#include "dla/corpus/stats.h"
#include "glog/logging.h"
#include "httplib.h"

namespace dla::service {

using json = nlohmann::json;

int ResolvePort(int configured) {
  const char* env = std::getenv("DLA_PORT");
  int port = 0;
  if (env != nullptr && absl::SimpleAtoi(env, &port) && port > 0 &&
      port < 65536) {
    return port;
  }
  return configured;
}

namespace {

void SendJson(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void SendError(httplib::Response& res, const absl::Status& s) {
  int status = 500;
  std::string code = "internal";
  switch (s.code()) {
    case absl::StatusCode::kNotFound:
      status = 404;
      code = "not_found";
      break;
    case absl::StatusCode::kFailedPrecondition:
      status = 409;
      code = "conflict";
      break;
    case absl::StatusCode::kInvalidArgument:
      status = 400;
      code = "invalid_argument";
      break;
    default:
      break;
  }
  SendJson(res,
           {{"error", {{"code", code}, {"message", std::string(s.message())}}}},
           status);
}

std::optional<std::string> Param(const httplib::Request& req,
                                 const std::string& name) {
  if (!req.has_param(name)) return std::nullopt;
  std::string v = req.get_param_value(name);
  if (v.empty()) return std::nullopt;
  return v;
}

absl::StatusOr<LabelAction> ParseLabelAction(const std::string& body) {
  if (body.empty()) return LabelAction::Cycle();
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("body must be a JSON object");
  }
  if (j.contains("label")) {
    const json& l = j["label"];
    absl::StatusOr<LayoutLabel> label =
        l.is_number_integer() ? LayoutLabelFromCode(l.get<int>())
        : l.is_string()
            ? ParseLayoutLabel(l.get<std::string>())
            : absl::InvalidArgumentError("label must be a name or a code");
    if (!label.ok()) return label.status();
    return LabelAction::Set(*label);
  }
  const std::string action = j.value("action", "cycle");
  if (action == "cycle") return LabelAction::Cycle();
  auto label = ParseLayoutLabel(action);
  if (!label.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown action '", action, "'"));
  }
  return LabelAction::Set(*label);
}

}  // namespace

class ApiServer::Impl {
 public:
  Impl(Curator* curator, ServerOptions options)
      : curator_(curator), options_(std::move(options)) {
    Routes();
  }

  httplib::Server server;

 private:
  void Routes() {
    server.set_post_routing_handler(
        [](const httplib::Request&, httplib::Response& res) {
          res.set_header("X-DLA-Schema", kSchemaVersion);
        });
    server.set_exception_handler([](const httplib::Request&,
                                    httplib::Response& res,
                                    std::exception_ptr ep) {
      std::string what = "unknown error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      SendError(res, absl::InternalError(what));
    });

    server.Get("/api/health", [](const httplib::Request&,
                                 httplib::Response& res) {
      SendJson(res, {{"status", "ok"}, {"schema", kSchemaVersion}});
    });

    server.Get("/api/sources", [this](const httplib::Request&,
                                      httplib::Response& res) {
      json out = json::array();
      for (const std::string& id : curator_->store()->ListSources()) {
        auto status = curator_->SourceStatus(id);
        if (status.ok()) out.push_back(*status);
      }
      SendJson(res, out);
    });

    server.Get(R"(/api/sources/([^/]+)/status)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 auto status = curator_->SourceStatus(req.matches[1]);
                 if (!status.ok()) return SendError(res, status.status());
                 SendJson(res, *status);
               });

    server.Post(R"(/api/sources/([^/]+)/train)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  auto ahead = curator_->RequestTrain(req.matches[1]);
                  if (!ahead.ok()) return SendError(res, ahead.status());
                  SendJson(res, {{"queued", true}, {"ahead", *ahead}},
                           202);
                });

    server.Get("/api/stats", [this](const httplib::Request& req,
                                    httplib::Response& res) {
      auto stats = corpus::ComputeStats(*curator_->store(), Param(req, "source"));
      if (!stats.ok()) return SendError(res, stats.status());
      SendJson(res, stats->ToJson());
    });

    server.Get("/api/documents", [this](const httplib::Request& req,
                                        httplib::Response& res) {
      std::optional<corpus::ValidationStatus> status;
      if (auto s = Param(req, "status")) {
        auto parsed = corpus::ParseValidationStatus(*s);
        if (!parsed.ok()) return SendError(res, parsed.status());
        status = *parsed;
      }
      int limit = kDefaultPageSize;
      if (auto l = Param(req, "limit")) {
        if (!absl::SimpleAtoi(*l, &limit) || limit < 1) {
          return SendError(res, absl::InvalidArgumentError(
                                    "limit must be a positive integer"));
        }
      }
      const std::optional<std::string> cursor = Param(req, "cursor");
      auto docs = curator_->ListDocuments(Param(req, "source"), status);
      if (!docs.ok()) return SendError(res, docs.status());
      std::string body;
      int emitted = 0;
      std::string last;
      std::optional<std::string> next;
      for (const corpus::DocumentManifest& m : *docs) {
        if (cursor && m.doc_id <= *cursor) continue;
        if (emitted == limit) {
          next = last;
          break;
        }
        json line = corpus::ManifestToJson(m);
        line["record"] = "manifest";
        body += line.dump() + "\n";
        last = m.doc_id;
        ++emitted;
      }
      json tail = {{"record", "cursor"}, {"count", emitted}};
      tail["next"] = next ? json(*next) : json();
      body += tail.dump() + "\n";
      res.set_content(body, "application/x-ndjson; charset=utf-8");
    });

    server.Get(R"(/api/documents/([^/]+))",
               [this](const httplib::Request& req, httplib::Response& res) {
                 const std::string id = req.matches[1];
                 if (!curator_->store()->HasDocument(id)) {
                   return SendError(res, absl::NotFoundError(absl::StrCat(
                                             "unknown document '", id, "'")));
                 }
                 auto m = curator_->store()->ReadManifest(id);
                 if (!m.ok()) return SendError(res, m.status());
                 SendJson(res, corpus::ManifestToJson(*m));
               });

    server.Get(R"(/api/documents/([^/]+)/pages/(\d+))",
               [this](const httplib::Request& req, httplib::Response& res) {
                 int page = 0;
                 if (!absl::SimpleAtoi(req.matches[2].str(), &page)) {
                   return SendError(res, absl::NotFoundError("bad page"));
                 }
                 auto view = curator_->GetPage(req.matches[1], page);
                 if (!view.ok()) return SendError(res, view.status());
                 SendJson(res, *view);
               });

    server.Get(
        R"(/api/documents/([^/]+)/pages/(\d+)/overlay\.svg)",
        [this](const httplib::Request& req, httplib::Response& res) {
          int page = 0;
          if (!absl::SimpleAtoi(req.matches[2].str(), &page)) {
            return SendError(res, absl::NotFoundError("bad page"));
          }
          const std::string id = req.matches[1];
          if (auto view = curator_->GetPage(id, page); !view.ok()) {
            return SendError(res, view.status());
          }
          auto layout = curator_->store()->ReadLayout(id);
          if (!layout.ok()) return SendError(res, layout.status());
          res.set_content(corpus::RenderPageSvg(*layout, page),
                          "image/svg+xml");
        });

    server.Post(R"(/api/documents/([^/]+)/blocks/([^/]+)/label)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  auto action = ParseLabelAction(req.body);
                  if (!action.ok()) return SendError(res, action.status());
                  auto r = curator_->SetLabel(req.matches[1], req.matches[2],
                                              *action);
                  if (!r.ok()) return SendError(res, r.status());
                  SendJson(res, corpus::BlockView(*r));
                });

    server.Post(R"(/api/documents/([^/]+)/blocks/([^/]+)/revert)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  auto r = curator_->RevertLabel(req.matches[1],
                                                 req.matches[2]);
                  if (!r.ok()) return SendError(res, r.status());
                  SendJson(res, corpus::BlockView(*r));
                });

    server.Post(R"(/api/documents/([^/]+)/validate)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  auto m = curator_->Validate(req.matches[1]);
                  if (!m.ok()) return SendError(res, m.status());
                  SendJson(res, corpus::ManifestToJson(*m));
                });

    if (options_.ui_dir) {
      if (!server.set_mount_point("/", *options_.ui_dir)) {
        LOG(ERROR) << "UI directory " << *options_.ui_dir << " not found";
      }
    }
  }

  Curator* curator_;
  ServerOptions options_;
};

ApiServer::ApiServer(Curator* curator, ServerOptions options)
    : impl_(std::make_unique<Impl>(curator, std::move(options))) {}

ApiServer::~ApiServer() { Stop(); }

bool ApiServer::Listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int ApiServer::BindAnyPort(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool ApiServer::ServeBound() { return impl_->server.listen_after_bind(); }

void ApiServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace dla::service
