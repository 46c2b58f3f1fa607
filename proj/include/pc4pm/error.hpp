#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pc4pm {

enum class ErrorCode {
  kMalformedXml,
  kSchemaViolation,
  kMalformedAbstraction,
  kUnknownAttribute,
  kUnknownValue,
  kPseudonymCollision,
  kDecryptionFailure,
  kInvalidParameter,
  kEmptyResult,
  kInvalidEpsilon,
  kUnknownVariantSymbol,
  kReservedSymbolClash,
  kUnresolvedToken,
  kNoResources,
  kParseFailure,
  kUnknownTechnique,
  kUnknownEntry,
  kUnknownJob,
  kParameterValidation,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

// Base of every error raised by the library. The code identifies the failure
// class; the message is meant for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the XES reader. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, std::size_t line,
             std::size_t column)
      : Error(code, message + " (line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Parameter document rejected by a technique schema. One message per
// offending parameter name.
class ParameterValidationError : public Error {
 public:
  explicit ParameterValidationError(std::map<std::string, std::string> messages);

  const std::map<std::string, std::string>& messages() const noexcept {
    return messages_;
  }

 private:
  std::map<std::string, std::string> messages_;
};

}  // namespace pc4pm
