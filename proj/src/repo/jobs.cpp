#include "pc4pm/repo/jobs.hpp"

#include <algorithm>

#include "pc4pm/core/xes.hpp"
#include "pc4pm/repo/techniques.hpp"

namespace pc4pm {

JobSpec job_spec_from_json(const Json& json) {
  auto bad = [](const std::string& what) {
    return Error(ErrorCode::kInvalidParameter, "job spec: " + what);
  };
  if (!json.is_object()) throw bad("must be an object");
  JobSpec spec;
  const char* technique_key = json.contains("technique") ? "technique" : "technique_id";
  if (!json.contains(technique_key) || !json[technique_key].is_string()) {
    throw bad("\"technique\" must be a string");
  }
  spec.technique = json[technique_key].get<std::string>();
  if (json.contains("inputs")) {
    const Json& inputs = json["inputs"];
    if (!inputs.is_array()) throw bad("\"inputs\" must be a list of entry ids");
    for (const auto& id : inputs) {
      if (!id.is_string()) throw bad("\"inputs\" must be a list of entry ids");
      spec.inputs.push_back(id.get<std::string>());
    }
  }
  if (json.contains("parameters")) {
    if (!json["parameters"].is_object()) throw bad("\"parameters\" must be an object");
    spec.parameters = json["parameters"];
  }
  if (json.contains("seed")) {
    if (!json["seed"].is_number_unsigned()) throw bad("\"seed\" must be a non-negative integer");
    spec.seed = json["seed"].get<std::uint64_t>();
  }
  if (json.contains("workers")) {
    if (!json["workers"].is_number_unsigned() || json["workers"].get<std::uint64_t>() == 0 ||
        json["workers"].get<std::uint64_t>() > 256) {
      throw bad("\"workers\" must be an integer between 1 and 256");
    }
    spec.workers = json["workers"].get<unsigned>();
  }
  if (json.contains("applied_at") && !json["applied_at"].is_null()) {
    std::optional<Timestamp> ts;
    if (json["applied_at"].is_string()) ts = parse_timestamp(json["applied_at"].get<std::string>());
    if (!ts) throw bad("\"applied_at\" must be an ISO-8601 timestamp");
    spec.applied_at = ts;
  }
  return spec;
}

Json job_spec_to_json(const JobSpec& spec) {
  Json j;
  j["technique"] = spec.technique;
  j["inputs"] = spec.inputs;
  j["parameters"] = spec.parameters;
  j["seed"] = spec.seed;
  j["workers"] = spec.workers;
  if (spec.applied_at) j["applied_at"] = format_timestamp(*spec.applied_at);
  return j;
}

std::string_view job_state_name(JobState state) {
  switch (state) {
    case JobState::kQueued: return "queued";
    case JobState::kRunning: return "running";
    case JobState::kDone: return "done";
    case JobState::kFailed: return "failed";
  }
  return "unknown";
}

Json job_status_to_json(const JobStatus& status) {
  Json j;
  j["job_id"] = status.job_id;
  j["status"] = job_state_name(status.state);
  j["spec"] = job_spec_to_json(status.spec);
  j["outputs"] = status.outputs;
  j["error"] = status.error;
  if (status.error_code) j["error_code"] = error_code_name(*status.error_code);
  return j;
}

JobRunner::JobRunner(Repository& repository, const Registry& registry, std::size_t pool_size)
    : repository_(repository), registry_(registry) {
  pool_size = std::max<std::size_t>(1, pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) workers_.emplace_back([this] { worker_loop(); });
}

JobRunner::~JobRunner() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  queued_.notify_all();
  for (auto& t : workers_) t.join();
}

std::string JobRunner::submit(const JobSpec& spec) {
  const OperationSchema* schema = registry_.find_operation(spec.technique);
  if (schema == nullptr) {
    throw Error(ErrorCode::kUnknownTechnique, "unknown technique " + spec.technique);
  }
  if (spec.workers == 0) {
    throw ParameterValidationError(
        std::map<std::string, std::string>{{"workers", "must be at least 1"}});
  }
  if (spec.inputs.size() != schema->inputs.size()) {
    throw ParameterValidationError(std::map<std::string, std::string>{
        {"inputs", "expected " + std::to_string(schema->inputs.size()) + " input(s), got " +
                       std::to_string(spec.inputs.size())}});
  }
  for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
    const RepoEntry e = repository_.live_entry(spec.inputs[i]);
    if (entry_kind_name(e.kind) != schema->inputs[i]) {
      throw ParameterValidationError(std::map<std::string, std::string>{
          {"inputs", "input " + std::to_string(i + 1) + " (" + e.entry_id + ") must be " +
                         schema->inputs[i]}});
    }
  }
  JobStatus status;
  status.spec = spec;
  status.spec.parameters = prepare_parameters(registry_, spec.technique, spec.parameters);
  std::string id;
  {
    std::lock_guard lock(mutex_);
    id = "job-" + std::to_string(next_id_++);
    status.job_id = id;
    jobs_.emplace(id, std::move(status));
    queue_.push_back(id);
  }
  queued_.notify_one();
  changed_.notify_all();
  return id;
}

JobStatus JobRunner::status(const std::string& job_id) const {
  std::lock_guard lock(mutex_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) throw Error(ErrorCode::kUnknownJob, "unknown job " + job_id);
  return it->second;
}

JobStatus JobRunner::wait(const std::string& job_id) const {
  std::unique_lock lock(mutex_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) throw Error(ErrorCode::kUnknownJob, "unknown job " + job_id);
  changed_.wait(lock, [&] {
    return it->second.state == JobState::kDone || it->second.state == JobState::kFailed;
  });
  return it->second;
}

JobStatus JobRunner::run(const JobSpec& spec) { return wait(submit(spec)); }

void JobRunner::worker_loop() {
  for (;;) {
    std::string id;
    {
      std::unique_lock lock(mutex_);
      queued_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (queue_.empty()) return;
      id = queue_.front();
      queue_.pop_front();
      jobs_.at(id).state = JobState::kRunning;
    }
    changed_.notify_all();
    execute(id);
    changed_.notify_all();
  }
}

void JobRunner::execute(const std::string& job_id) {
  JobSpec spec;
  {
    std::lock_guard lock(mutex_);
    spec = jobs_.at(job_id).spec;
  }
  std::vector<std::string> outputs;
  std::string error;
  std::optional<ErrorCode> code;
  try {
    const OperationSchema& schema = *registry_.find_operation(spec.technique);
    std::vector<Artifact> inputs;
    std::string base_name;
    Timestamp latest{};
    for (const auto& id : spec.inputs) {
      const RepoEntry e = repository_.entry(id);
      if (base_name.empty()) base_name = e.name;
      latest = std::max(latest, e.created_at);
      if (e.kind == EntryKind::kXes) {
        inputs.emplace_back(repository_.load_log(id));
      } else {
        inputs.emplace_back(repository_.load_abstraction(id));
      }
    }
    const RunContext ctx{spec.applied_at.value_or(latest), spec.workers};
    auto artifacts = execute_operation(schema, spec.parameters, inputs, spec.seed, ctx);
    for (const auto& named : artifacts) {
      std::string name = base_name + "~" + spec.technique;
      if (!named.suffix.empty()) name += "." + named.suffix;
      RepoEntry stored;
      if (const auto* log = std::get_if<EventLog>(&named.artifact)) {
        stored = repository_.store(write_xes(*log), EntryKind::kXes, name, spec.inputs,
                                   spec.technique);
      } else {
        stored = repository_.store(write_ela(std::get<EventLogAbstraction>(named.artifact)),
                                   EntryKind::kEla, name, spec.inputs, spec.technique);
      }
      outputs.push_back(stored.entry_id);
    }
  } catch (const Error& e) {
    code = e.code();
    error = std::string(error_code_name(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    error = std::string("internal error: ") + e.what();
  }
  std::lock_guard lock(mutex_);
  JobStatus& status = jobs_.at(job_id);
  if (error.empty() && !outputs.empty()) {
    status.state = JobState::kDone;
    status.outputs = std::move(outputs);
  } else {
    status.state = JobState::kFailed;
    status.error = error.empty() ? "job produced no output" : error;
    status.error_code = code;
  }
}

}  // namespace pc4pm
