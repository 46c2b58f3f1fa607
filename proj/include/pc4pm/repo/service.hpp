#pragma once

// Endpoint logic shared by the HTTP API and the CLI. Every function returns
// the JSON response body and throws pc4pm::Error on failure.

#include <optional>
#include <string>

#include "pc4pm/core/json_codec.hpp"
#include "pc4pm/guidance/registry.hpp"
#include "pc4pm/repo/repository.hpp"

namespace pc4pm {

Json guide_response(const Registry& registry, const Json& query);

Json list_response(const Repository& repository);

Json show_response(const Repository& repository, const std::string& entry_id);

// `kind` and `l` arrive as text (query string or command line) and are
// validated against the "risk" operation schema.
Json risk_response(const Repository& repository, const Registry& registry,
                   const std::string& log, const std::optional<std::string>& kind,
                   const std::optional<std::string>& l);

Json utility_response(const Repository& repository, const std::string& original,
                      const std::string& anonymized);

}  // namespace pc4pm
