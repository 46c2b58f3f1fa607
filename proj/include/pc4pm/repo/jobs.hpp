#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pc4pm/core/json_codec.hpp"
#include "pc4pm/core/timestamp.hpp"
#include "pc4pm/error.hpp"
#include "pc4pm/guidance/registry.hpp"
#include "pc4pm/repo/repository.hpp"

namespace pc4pm {

// `technique` names a job operation from the registry (e.g. "suppress").
// Records appended by the job are stamped with `applied_at`, or, when unset,
// with the latest created_at among the inputs, so reruns are byte-identical.
struct JobSpec {
  std::string technique;
  std::vector<std::string> inputs;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::optional<Timestamp> applied_at;
};

// Throws InvalidParameter for a malformed document.
JobSpec job_spec_from_json(const Json& json);
Json job_spec_to_json(const JobSpec& spec);

enum class JobState { kQueued, kRunning, kDone, kFailed };

std::string_view job_state_name(JobState state);

struct JobStatus {
  std::string job_id;
  JobSpec spec;
  JobState state = JobState::kQueued;
  std::vector<std::string> outputs;
  std::string error;
  std::optional<ErrorCode> error_code;
};

Json job_status_to_json(const JobStatus& status);

// Bounded pool executing jobs against a repository. Submission validates the
// spec synchronously; execution happens on the pool. A failing job leaves
// the repository untouched apart from outputs of jobs that succeeded.
class JobRunner {
 public:
  JobRunner(Repository& repository, const Registry& registry, std::size_t pool_size = 2);
  ~JobRunner();

  JobRunner(const JobRunner&) = delete;
  JobRunner& operator=(const JobRunner&) = delete;

  // Throws UnknownTechnique, UnknownEntry or ParameterValidationError (input
  // count and kinds are reported under "inputs").
  std::string submit(const JobSpec& spec);

  // Throws UnknownJob.
  JobStatus status(const std::string& job_id) const;

  // Blocks until the job is done or failed.
  JobStatus wait(const std::string& job_id) const;

  // Submit and wait.
  JobStatus run(const JobSpec& spec);

 private:
  void worker_loop();
  void execute(const std::string& job_id);

  Repository& repository_;
  const Registry& registry_;
  mutable std::mutex mutex_;
  mutable std::condition_variable changed_;
  std::condition_variable queued_;
  std::deque<std::string> queue_;
  std::map<std::string, JobStatus> jobs_;
  std::uint64_t next_id_ = 1;
  bool stopping_ = false;
  std::vector<std::thread> workers_;
};

}  // namespace pc4pm
