#pragma once

// JSON forms of core types shared by the .ela encoding and the service API.

#include <json.hpp>

#include "pc4pm/core/metadata.hpp"
#include "pc4pm/core/value.hpp"

namespace pc4pm {

using Json = nlohmann::ordered_json;

Json record_to_json(const OperationRecord& record);
OperationRecord record_from_json(const Json& json);  // throws Json exceptions

Json metadata_to_json(const PrivacyMetadata& metadata);
PrivacyMetadata metadata_from_json(const Json& json);

// Scalar value as a bare JSON value (kind implied by context).
Json value_to_json(const TypedValue& value);
// std::nullopt if `json` cannot be read as `kind`.
std::optional<TypedValue> value_from_json(ValueKind kind, const Json& json);

// Canonical compact text used for parameter digests.
inline std::string canonical_text(const Json& json) { return json.dump(); }

}  // namespace pc4pm
