#include "pc4pm/error.hpp"

namespace pc4pm {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedXml: return "MalformedXml";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kMalformedAbstraction: return "MalformedAbstraction";
    case ErrorCode::kUnknownAttribute: return "UnknownAttribute";
    case ErrorCode::kUnknownValue: return "UnknownValue";
    case ErrorCode::kPseudonymCollision: return "PseudonymCollision";
    case ErrorCode::kDecryptionFailure: return "DecryptionFailure";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kEmptyResult: return "EmptyResult";
    case ErrorCode::kInvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::kUnknownVariantSymbol: return "UnknownVariantSymbol";
    case ErrorCode::kReservedSymbolClash: return "ReservedSymbolClash";
    case ErrorCode::kUnresolvedToken: return "UnresolvedToken";
    case ErrorCode::kNoResources: return "NoResources";
    case ErrorCode::kParseFailure: return "ParseFailure";
    case ErrorCode::kUnknownTechnique: return "UnknownTechnique";
    case ErrorCode::kUnknownEntry: return "UnknownEntry";
    case ErrorCode::kUnknownJob: return "UnknownJob";
    case ErrorCode::kParameterValidation: return "ParameterValidation";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

std::string join_messages(const std::map<std::string, std::string>& messages) {
  std::string out = "invalid parameters:";
  for (const auto& [name, message] : messages) {
    out += " " + name + ": " + message + ";";
  }
  return out;
}

}  // namespace

ParameterValidationError::ParameterValidationError(
    std::map<std::string, std::string> messages)
    : Error(ErrorCode::kParameterValidation, join_messages(messages)),
      messages_(std::move(messages)) {}

}  // namespace pc4pm
