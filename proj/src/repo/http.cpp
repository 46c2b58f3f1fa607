#include "pc4pm/repo/http.hpp"

#include <functional>
#include <thread>

#include <httplib.h>

#include "pc4pm/repo/service.hpp"

namespace pc4pm {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownEntry:
    case ErrorCode::kUnknownJob:
      return 404;
    case ErrorCode::kParameterValidation:
      return 422;
    case ErrorCode::kIo:
      return 500;
    default:
      return 400;
  }
}

Json error_body(const Error& error) {
  Json j;
  j["error"] = error_code_name(error.code());
  j["message"] = error.what();
  if (const auto* v = dynamic_cast<const ParameterValidationError*>(&error)) {
    j["messages"] = v->messages();
  }
  return j;
}

namespace {

using Handler = std::function<Json(const httplib::Request&, httplib::Response&)>;

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json");
}

// Runs a handler and turns library errors and malformed JSON into error
// responses.
httplib::Server::Handler wrap(Handler handler) {
  return [handler = std::move(handler)](const httplib::Request& req, httplib::Response& res) {
    try {
      res.status = 200;
      Json body = handler(req, res);
      send_json(res, res.status, body);
    } catch (const Error& e) {
      send_json(res, http_status(e.code()), error_body(e));
    } catch (const Json::exception& e) {
      send_json(res, 400, error_body(Error(ErrorCode::kInvalidParameter,
                                           std::string("malformed JSON: ") + e.what())));
    } catch (const std::exception& e) {
      send_json(res, 500, {{"error", "Internal"}, {"message", e.what()}});
    }
  };
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  return Json::parse(req.body);
}

std::string query(const httplib::Request& req, const std::string& name, bool required = true) {
  if (!req.has_param(name)) {
    if (!required) return {};
    throw ParameterValidationError(
        std::map<std::string, std::string>{{name, "query parameter is required"}});
  }
  return req.get_param_value(name);
}

std::vector<std::string> split_ids(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view part = text.substr(0, comma);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (!part.empty()) out.emplace_back(part);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

EntryKind upload_kind(const std::string& declared, const std::string& filename,
                      const std::string& content) {
  if (!declared.empty()) {
    if (auto k = parse_entry_kind(declared)) return *k;
    throw ParameterValidationError(
        std::map<std::string, std::string>{{"kind", "must be one of xes, ela"}});
  }
  auto ends_with = [&](std::string_view suffix) {
    return filename.size() >= suffix.size() &&
           filename.compare(filename.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".xes")) return EntryKind::kXes;
  if (ends_with(".ela")) return EntryKind::kEla;
  auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && content[first] == '{') return EntryKind::kEla;
  return EntryKind::kXes;
}

}  // namespace

struct HttpService::Impl {
  Repository& repository;
  JobRunner& jobs;
  const Registry& registry;
  httplib::Server server;
  std::thread thread;

  Impl(Repository& r, JobRunner& j, const Registry& g) : repository(r), jobs(j), registry(g) {
    routes();
  }

  Json upload(const httplib::Request& req, httplib::Response& res) {
    std::string content, filename, name, kind, parents, technique;
    if (req.is_multipart_form_data()) {
      if (!req.has_file("file")) {
        throw ParameterValidationError(
            std::map<std::string, std::string>{{"file", "multipart field is required"}});
      }
      auto file = req.get_file_value("file");
      content = file.content;
      filename = file.filename;
      auto field = [&](const char* key) {
        return req.has_file(key) ? req.get_file_value(key).content : std::string();
      };
      name = field("name");
      kind = field("kind");
      parents = field("parents");
      technique = field("technique");
    } else {
      content = req.body;
      name = query(req, "name", false);
      kind = query(req, "kind", false);
      parents = query(req, "parents", false);
      technique = query(req, "technique", false);
    }
    if (name.empty()) name = filename.empty() ? "upload" : filename;
    const EntryKind k = upload_kind(kind, filename, content);
    RepoEntry e = repository.store(content, k, name, split_ids(parents),
                                   technique.empty() ? std::nullopt
                                                     : std::optional<std::string>(technique));
    res.status = 201;
    return entry_to_json(e);
  }

  void routes() {
    server.Get("/techniques", wrap([this](const auto&, auto&) { return registry.to_json(); }));
    server.Post("/guide", wrap([this](const auto& req, auto&) {
      return guide_response(registry, parse_body(req));
    }));
    server.Get("/logs", wrap([this](const auto&, auto&) { return list_response(repository); }));
    server.Post("/logs", wrap([this](const auto& req, auto& res) { return upload(req, res); }));
    server.Get(R"(/logs/([^/]+)/lineage)", wrap([this](const auto& req, auto&) {
      return lineage_to_json(repository.lineage(req.matches[1]));
    }));
    server.Get(R"(/logs/([^/]+))", wrap([this](const auto& req, auto&) {
      return show_response(repository, req.matches[1]);
    }));
    server.Delete(R"(/logs/([^/]+))", wrap([this](const auto& req, auto&) {
      const std::string id = req.matches[1];
      repository.remove(id);
      return Json{{"deleted", id}};
    }));
    server.Post("/jobs", wrap([this](const auto& req, auto& res) {
      std::string id = jobs.submit(job_spec_from_json(parse_body(req)));
      res.status = 202;
      return job_status_to_json(jobs.status(id));
    }));
    server.Get(R"(/jobs/([^/]+))", wrap([this](const auto& req, auto&) {
      return job_status_to_json(jobs.status(req.matches[1]));
    }));
    server.Get("/analysis/risk", wrap([this](const auto& req, auto&) {
      auto optional = [&](const char* key) {
        return req.has_param(key) ? std::optional<std::string>(req.get_param_value(key))
                                  : std::nullopt;
      };
      return risk_response(repository, registry, query(req, "log"), optional("kind"),
                           optional("l"));
    }));
    server.Get("/analysis/utility", wrap([this](const auto& req, auto&) {
      return utility_response(repository, query(req, "original"), query(req, "anonymized"));
    }));
  }
};

HttpService::HttpService(Repository& repository, JobRunner& jobs, const Registry& registry)
    : impl_(std::make_unique<Impl>(repository, jobs, registry)) {}

HttpService::~HttpService() { stop(); }

int HttpService::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpService::serve(const std::string& host, int port) {
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->server.listen_after_bind();
}

void HttpService::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace pc4pm
