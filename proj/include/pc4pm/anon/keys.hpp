#pragma once

#include <string>
#include <string_view>

#include "pc4pm/util/crypto.hpp"

namespace pc4pm {

enum class KeyMode { kPseudonymizeDeterministic, kEncryptRecoverable };

std::string_view key_mode_name(KeyMode mode);

// Key material for the cryptography operation and the connector method. The
// secret is never written into logs, abstractions or metadata.
struct KeySpec {
  std::string key_id;
  Bytes secret;
  KeyMode mode = KeyMode::kPseudonymizeDeterministic;

  // Throws InvalidParameter if the id is not [A-Za-z0-9_.-]+ or the secret is
  // shorter than 16 bytes.
  void check() const;

  // Resolves a key reference through the environment: reference "clinic"
  // reads PC4PM_KEY_CLINIC. The value is hex-decoded when it is valid hex,
  // otherwise used as raw bytes.
  static KeySpec from_environment(std::string_view reference, KeyMode mode);
  static std::string environment_variable(std::string_view reference);
};

// Keyed-MAC pseudonym: HMAC-SHA256 over the text, hex, first 16 chars.
std::string pseudonym_token(const KeySpec& key, std::string_view plaintext);

}  // namespace pc4pm
