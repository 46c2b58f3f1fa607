#include "pc4pm/repo/service.hpp"

#include <charconv>

#include "pc4pm/analysis/analysis.hpp"
#include "pc4pm/error.hpp"

namespace pc4pm {

Json guide_response(const Registry& registry, const Json& query) {
  GuideQuery q = guide_query_from_json(query);
  return Json{{"query", guide_query_to_json(q)}, {"techniques", registry.filter(q)}};
}

Json list_response(const Repository& repository) {
  Json entries = Json::array();
  for (const auto& e : repository.list()) entries.push_back(entry_to_json(e));
  return Json{{"entries", entries}};
}

Json show_response(const Repository& repository, const std::string& entry_id) {
  RepoEntry e = repository.entry(entry_id);
  return Json{{"entry", entry_to_json(e)}, {"content", repository.content(entry_id)}};
}

Json risk_response(const Repository& repository, const Registry& registry,
                   const std::string& log, const std::optional<std::string>& kind,
                   const std::optional<std::string>& l) {
  Json params = Json::object();
  if (kind) params["knowledge_kind"] = *kind;
  if (l) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(l->data(), l->data() + l->size(), value);
    if (ec != std::errc{} || ptr != l->data() + l->size()) {
      throw ParameterValidationError(
          std::map<std::string, std::string>{{"l", "must be an integer"}});
    }
    params["l"] = value;
  }
  params = registry.validate("risk", params);
  repository.live_entry(log);
  RiskReport r = disclosure_risk(repository.load_log(log),
                                 *parse_knowledge_kind(params["knowledge_kind"].get<std::string>()),
                                 params["l"].get<std::size_t>());
  Json body = risk_to_json(r);
  body["log"] = log;
  return body;
}

Json utility_response(const Repository& repository, const std::string& original,
                      const std::string& anonymized) {
  repository.live_entry(original);
  repository.live_entry(anonymized);
  Json body = utility_to_json(
      data_utility(repository.load_log(original), repository.load_log(anonymized)));
  body["original"] = original;
  body["anonymized"] = anonymized;
  return body;
}

}  // namespace pc4pm
