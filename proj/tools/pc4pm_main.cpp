// pc4pm command line: repository, jobs, analysis and the HTTP server.
//
//   pc4pm [--repo DIR] upload FILE [--name N] [--kind xes|ela] [--parent ID]...
//   pc4pm run OPERATION --input ID... [--params JSON] [--set KEY=VALUE]...
//             [--config FILE] [--seed N] [--workers N] [--applied-at ISO]
//   pc4pm risk --log ID [--kind set|multiset|subsequence] [--l N]
//   pc4pm utility --original ID --anonymized ID
//   pc4pm guide [--pmps V] [--pmac V] [--prps V] [--prac V]
//   pc4pm techniques | list | show ID [--output FILE] | lineage ID | delete ID
//   pc4pm serve [--host H] [--port P] [--pool N]
//
// The repository root defaults to $PC4PM_REPO. Key references used by
// pseudonymize and the connector resolve through $PC4PM_KEY_<REFERENCE>.
// Responses are the JSON bodies the HTTP API returns; --ids prints only
// entry ids for upload and run.

#include <CLI11.hpp>

#include <csignal>
#include <iostream>

#include "pc4pm/repo/http.hpp"
#include "pc4pm/repo/service.hpp"
#include "pc4pm/repo/techniques.hpp"
#include "pc4pm/util/io.hpp"

namespace {

using pc4pm::Json;

pc4pm::HttpService* g_service = nullptr;

void on_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

void print(const Json& body) { std::cout << body.dump(2) << "\n"; }

// Value of --set KEY=VALUE: JSON when it parses, otherwise a plain string.
Json setting_value(const std::string& text) {
  Json parsed = Json::parse(text, nullptr, false);
  return parsed.is_discarded() ? Json(text) : parsed;
}

int exit_code(pc4pm::ErrorCode code) {
  switch (code) {
    case pc4pm::ErrorCode::kParameterValidation:
    case pc4pm::ErrorCode::kInvalidParameter:
    case pc4pm::ErrorCode::kUnknownTechnique:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pc4pm: privacy techniques for process mining event logs"};
  app.require_subcommand(1);
  std::string repo_root = pc4pm::Repository::default_root().string();
  app.add_option("--repo", repo_root, "Repository root directory (default $PC4PM_REPO)");

  bool ids_only = false;

  auto* upload = app.add_subcommand("upload", "Store an .xes or .ela file");
  std::string upload_file, upload_name, upload_kind;
  std::vector<std::string> upload_parents;
  upload->add_option("file", upload_file, "File to store")->required()->check(CLI::ExistingFile);
  upload->add_option("--name", upload_name, "Entry name (default: file name)");
  upload->add_option("--kind", upload_kind, "xes or ela (default: by extension)")
      ->check(CLI::IsMember({"xes", "ela"}));
  upload->add_option("--parent", upload_parents, "Parent entry id");
  upload->add_flag("--ids", ids_only, "Print only the entry id");

  auto* run = app.add_subcommand("run", "Run a technique job and wait for it");
  std::string run_op, run_params, run_config, run_applied;
  std::vector<std::string> run_inputs, run_sets;
  std::uint64_t run_seed = 0;
  unsigned run_workers = 1;
  run->add_option("operation", run_op, "Operation id, e.g. suppress or dp_publish");
  run->add_option("--input,-i", run_inputs, "Input entry id (repeat for several)");
  run->add_option("--params,-p", run_params, "Parameter document as JSON");
  run->add_option("--set,-s", run_sets, "Single parameter KEY=VALUE (VALUE read as JSON if valid)");
  run->add_option("--config,-c", run_config, "Job spec file: {technique, inputs, parameters, seed, workers}")
      ->check(CLI::ExistingFile);
  auto* seed_opt = run->add_option("--seed", run_seed, "Random seed");
  auto* workers_opt = run->add_option("--workers", run_workers, "Data-parallel workers")
                          ->check(CLI::Range(1u, 256u));
  run->add_option("--applied-at", run_applied, "Timestamp stamped into appended records");
  run->add_flag("--ids", ids_only, "Print only the output entry ids");

  auto* risk = app.add_subcommand("risk", "Disclosure risk of a stored log");
  std::string risk_log, risk_kind, risk_l;
  risk->add_option("--log", risk_log, "Entry id")->required();
  auto* risk_kind_opt = risk->add_option("--kind", risk_kind, "set, multiset or subsequence");
  auto* risk_l_opt = risk->add_option("--l", risk_l, "Background knowledge size");

  auto* utility = app.add_subcommand("utility", "Data utility of an anonymized log");
  std::string util_original, util_anonymized;
  utility->add_option("--original", util_original, "Original entry id")->required();
  utility->add_option("--anonymized", util_anonymized, "Anonymized entry id")->required();

  auto* guide = app.add_subcommand("guide", "Techniques matching the chosen dimensions");
  std::map<std::string, std::string> guide_choices;
  for (const char* dim : {"pmps", "pmac", "prps", "prac"}) {
    guide->add_option_function<std::string>(
        std::string("--") + dim, [&guide_choices, dim](const std::string& v) { guide_choices[dim] = v; },
        std::string("Value for ") + dim);
  }

  auto* techniques = app.add_subcommand("techniques", "Registry with parameter schemas");
  auto* list = app.add_subcommand("list", "Live repository entries");

  auto* show = app.add_subcommand("show", "Entry metadata, or its content with --output");
  std::string show_id, show_output;
  show->add_option("id", show_id, "Entry id")->required();
  show->add_option("--output,-o", show_output, "Write the content to this file ('-' for stdout)");

  auto* lineage = app.add_subcommand("lineage", "Ancestry graph of an entry");
  std::string lineage_id;
  lineage->add_option("id", lineage_id, "Entry id")->required();

  auto* remove = app.add_subcommand("delete", "Hide an entry from the listing");
  std::string remove_id;
  remove->add_option("id", remove_id, "Entry id")->required();

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  std::string serve_host = "127.0.0.1";
  int serve_port = 8080;
  std::size_t serve_pool = 2;
  serve->add_option("--host", serve_host, "Bind address");
  serve->add_option("--port", serve_port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--pool", serve_pool, "Job worker threads")->check(CLI::Range(1, 64));

  CLI11_PARSE(app, argc, argv);

  try {
    const pc4pm::Registry& registry = pc4pm::Registry::builtin();
    if (*guide) {
      print(pc4pm::guide_response(registry, Json(guide_choices)));
      return 0;
    }
    if (*techniques) {
      print(registry.to_json());
      return 0;
    }

    pc4pm::Repository repo(repo_root);
    if (*upload) {
      std::string kind = upload_kind;
      if (kind.empty()) kind = upload_file.ends_with(".ela") ? "ela" : "xes";
      std::string name = upload_name.empty()
                             ? std::filesystem::path(upload_file).filename().string()
                             : upload_name;
      pc4pm::RepoEntry e = repo.store(pc4pm::read_file(upload_file),
                                      *pc4pm::parse_entry_kind(kind), name, upload_parents);
      if (ids_only) {
        std::cout << e.entry_id << "\n";
      } else {
        print(pc4pm::entry_to_json(e));
      }
      return 0;
    }
    if (*run) {
      Json doc = run_config.empty() ? Json::object() : Json::parse(pc4pm::read_file(run_config));
      if (!run_op.empty()) doc["technique"] = run_op;
      if (!run_inputs.empty()) doc["inputs"] = run_inputs;
      if (!run_params.empty()) doc["parameters"] = Json::parse(run_params);
      for (const auto& s : run_sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos) {
          throw pc4pm::Error(pc4pm::ErrorCode::kInvalidParameter, "--set needs KEY=VALUE: " + s);
        }
        doc["parameters"][s.substr(0, eq)] = setting_value(s.substr(eq + 1));
      }
      if (seed_opt->count() > 0) doc["seed"] = run_seed;
      if (workers_opt->count() > 0) doc["workers"] = run_workers;
      if (!run_applied.empty()) doc["applied_at"] = run_applied;
      pc4pm::JobRunner jobs(repo, registry, 1);
      pc4pm::JobStatus status = jobs.run(pc4pm::job_spec_from_json(doc));
      if (ids_only) {
        for (const auto& id : status.outputs) std::cout << id << "\n";
        if (status.state == pc4pm::JobState::kFailed) std::cerr << status.error << "\n";
      } else {
        print(pc4pm::job_status_to_json(status));
      }
      return status.state == pc4pm::JobState::kDone ? 0 : 1;
    }
    if (*risk) {
      auto opt = [](CLI::Option* o, const std::string& v) {
        return o->count() > 0 ? std::optional<std::string>(v) : std::nullopt;
      };
      print(pc4pm::risk_response(repo, registry, risk_log, opt(risk_kind_opt, risk_kind),
                                 opt(risk_l_opt, risk_l)));
      return 0;
    }
    if (*utility) {
      print(pc4pm::utility_response(repo, util_original, util_anonymized));
      return 0;
    }
    if (*list) {
      print(pc4pm::list_response(repo));
      return 0;
    }
    if (*show) {
      if (show_output.empty()) {
        print(pc4pm::entry_to_json(repo.entry(show_id)));
      } else if (show_output == "-") {
        std::cout << repo.content(show_id);
      } else {
        pc4pm::write_file(show_output, repo.content(show_id));
      }
      return 0;
    }
    if (*lineage) {
      print(pc4pm::lineage_to_json(repo.lineage(lineage_id)));
      return 0;
    }
    if (*remove) {
      repo.remove(remove_id);
      print(Json{{"deleted", remove_id}});
      return 0;
    }
    if (*serve) {
      pc4pm::JobRunner jobs(repo, registry, serve_pool);
      pc4pm::HttpService service(repo, jobs, registry);
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "pc4pm serving " << repo.root().string() << " on http://" << serve_host << ":"
                << serve_port << "\n";
      service.serve(serve_host, serve_port);
      g_service = nullptr;
      return 0;
    }
  } catch (const pc4pm::Error& e) {
    std::cerr << pc4pm::error_body(e).dump(2) << "\n";
    return exit_code(e.code());
  } catch (const Json::exception& e) {
    std::cerr << "malformed JSON: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
