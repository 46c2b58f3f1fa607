#include "pc4pm/anon/keys.hpp"

#include <cctype>
#include <cstdlib>

#include "pc4pm/error.hpp"

namespace pc4pm {

std::string_view key_mode_name(KeyMode mode) {
  return mode == KeyMode::kPseudonymizeDeterministic ? "pseudonymize-deterministic"
                                                     : "encrypt-recoverable";
}

void KeySpec::check() const {
  if (key_id.empty()) throw Error(ErrorCode::kInvalidParameter, "key id must not be empty");
  for (char c : key_id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') {
      throw Error(ErrorCode::kInvalidParameter, "key id '" + key_id + "' has invalid characters");
    }
  }
  if (secret.size() < 16) {
    throw Error(ErrorCode::kInvalidParameter,
                "key '" + key_id + "' secret must be at least 16 bytes");
  }
}

std::string KeySpec::environment_variable(std::string_view reference) {
  std::string name = "PC4PM_KEY_";
  for (char c : reference) {
    name += std::isalnum(static_cast<unsigned char>(c))
                ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                : '_';
  }
  return name;
}

KeySpec KeySpec::from_environment(std::string_view reference, KeyMode mode) {
  std::string variable = environment_variable(reference);
  const char* value = std::getenv(variable.c_str());
  if (value == nullptr || *value == '\0') {
    throw Error(ErrorCode::kInvalidParameter,
                "key reference '" + std::string(reference) + "' is not set (" + variable + ")");
  }
  KeySpec key;
  key.key_id = std::string(reference);
  key.mode = mode;
  std::string_view text(value);
  if (auto decoded = from_hex(text)) {
    key.secret = std::move(*decoded);
  } else {
    key.secret.assign(text.begin(), text.end());
  }
  key.check();
  return key;
}

std::string pseudonym_token(const KeySpec& key, std::string_view plaintext) {
  return to_hex(hmac_sha256(key.secret, plaintext)).substr(0, 16);
}

}  // namespace pc4pm
