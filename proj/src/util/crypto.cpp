#include "pc4pm/util/crypto.hpp"

#include <sodium.h>

#include <stdexcept>

namespace pc4pm {

namespace {

void ensure_sodium() {
  static const int status = sodium_init();
  if (status < 0) throw std::runtime_error("libsodium failed to initialize");
}

constexpr std::string_view kAeadKeyLabel = "pc4pm/aead-key";
constexpr std::string_view kNonceKeyLabel = "pc4pm/aead-nonce";

}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

std::optional<Bytes> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

std::array<std::uint8_t, 32> sha256(std::string_view data) {
  ensure_sodium();
  std::array<std::uint8_t, 32> out{};
  crypto_hash_sha256(out.data(), reinterpret_cast<const unsigned char*>(data.data()),
                     data.size());
  return out;
}

std::string sha256_hex(std::string_view data) { return to_hex(sha256(data)); }

std::array<std::uint8_t, 32> hmac_sha256(std::span<const std::uint8_t> key,
                                         std::string_view message) {
  ensure_sodium();
  crypto_auth_hmacsha256_state state;
  crypto_auth_hmacsha256_init(&state, key.data(), key.size());
  crypto_auth_hmacsha256_update(&state,
                                reinterpret_cast<const unsigned char*>(message.data()),
                                message.size());
  std::array<std::uint8_t, 32> out{};
  crypto_auth_hmacsha256_final(&state, out.data());
  return out;
}

Bytes seal_deterministic(std::span<const std::uint8_t> secret, std::string_view plaintext) {
  ensure_sodium();
  auto key = hmac_sha256(secret, kAeadKeyLabel);
  auto nonce_key = hmac_sha256(secret, kNonceKeyLabel);
  auto nonce_full = hmac_sha256(nonce_key, plaintext);
  constexpr std::size_t kNonce = crypto_aead_xchacha20poly1305_ietf_NPUBBYTES;
  constexpr std::size_t kTag = crypto_aead_xchacha20poly1305_ietf_ABYTES;

  Bytes out(kNonce + plaintext.size() + kTag);
  std::copy_n(nonce_full.begin(), kNonce, out.begin());
  unsigned long long written = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt(
      out.data() + kNonce, &written,
      reinterpret_cast<const unsigned char*>(plaintext.data()), plaintext.size(), nullptr,
      0, nullptr, out.data(), key.data());
  out.resize(kNonce + written);
  return out;
}

std::optional<std::string> open_deterministic(std::span<const std::uint8_t> secret,
                                              std::span<const std::uint8_t> sealed) {
  ensure_sodium();
  constexpr std::size_t kNonce = crypto_aead_xchacha20poly1305_ietf_NPUBBYTES;
  constexpr std::size_t kTag = crypto_aead_xchacha20poly1305_ietf_ABYTES;
  if (sealed.size() < kNonce + kTag) return std::nullopt;
  auto key = hmac_sha256(secret, kAeadKeyLabel);
  std::string plain(sealed.size() - kNonce - kTag, '\0');
  unsigned long long written = 0;
  int rc = crypto_aead_xchacha20poly1305_ietf_decrypt(
      reinterpret_cast<unsigned char*>(plain.data()), &written, nullptr,
      sealed.data() + kNonce, sealed.size() - kNonce, nullptr, 0, sealed.data(),
      key.data());
  if (rc != 0) return std::nullopt;
  plain.resize(written);
  return plain;
}

void secure_random_bytes(std::span<std::uint8_t> out) {
  ensure_sodium();
  randombytes_buf(out.data(), out.size());
}

}  // namespace pc4pm
