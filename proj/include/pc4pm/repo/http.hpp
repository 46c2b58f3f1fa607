#pragma once

#include <memory>
#include <string>

#include "pc4pm/error.hpp"
#include "pc4pm/guidance/registry.hpp"
#include "pc4pm/repo/jobs.hpp"
#include "pc4pm/repo/repository.hpp"

namespace pc4pm {

// HTTP status used for a library error.
int http_status(ErrorCode code);

// JSON error body: {"error": <code name>, "message": ..., "messages": {...}}
// where "messages" carries per-parameter texts for validation failures.
Json error_body(const Error& error);

// JSON API over a repository and job runner:
//   GET  /techniques                 registry with parameter schemas
//   POST /guide                      {"pmps"?, "pmac"?, "prps"?, "prac"?} -> techniques
//   GET  /logs                       live entries
//   POST /logs                       multipart field "file" (.xes/.ela), optional
//                                    "name", "kind", "parents" (comma separated)
//   GET  /logs/{id}                  entry and content
//   GET  /logs/{id}/lineage          ancestry graph
//   DELETE /logs/{id}                tombstone
//   POST /jobs                       job spec -> {"job_id"}
//   GET  /jobs/{id}                  job status
//   GET  /analysis/risk?log=&kind=&l=
//   GET  /analysis/utility?original=&anonymized=
class HttpService {
 public:
  HttpService(Repository& repository, JobRunner& jobs, const Registry& registry);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds and serves on a background thread. Port 0 picks a free port; the
  // bound port is returned. Throws Error(kIo) when binding fails.
  int start(const std::string& host, int port);

  // Binds and serves on the calling thread until stop().
  void serve(const std::string& host, int port);

  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pc4pm
