#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pc4pm {

using Bytes = std::vector<std::uint8_t>;

std::string to_hex(std::span<const std::uint8_t> bytes);
std::optional<Bytes> from_hex(std::string_view hex);

std::array<std::uint8_t, 32> sha256(std::string_view data);
std::string sha256_hex(std::string_view data);

std::array<std::uint8_t, 32> hmac_sha256(std::span<const std::uint8_t> key,
                                         std::string_view message);

// Deterministic authenticated encryption (XChaCha20-Poly1305 with a nonce
// derived from a keyed hash of the plaintext). Equal plaintexts give equal
// ciphertexts under one secret. Output is nonce || ciphertext || tag.
Bytes seal_deterministic(std::span<const std::uint8_t> secret, std::string_view plaintext);
std::optional<std::string> open_deterministic(std::span<const std::uint8_t> secret,
                                              std::span<const std::uint8_t> sealed);

// Fills `out` from the operating system CSPRNG.
void secure_random_bytes(std::span<std::uint8_t> out);

}  // namespace pc4pm
