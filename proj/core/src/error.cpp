#include "permrex/error.hpp"

namespace permrex {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::CompactOverflow: return "CompactOverflow";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::InvalidArgs: return "InvalidArgs";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UndecidedAtPrecision: return "UndecidedAtPrecision";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what,
             std::optional<std::size_t> offset)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      offset_(offset) {}

}  // namespace permrex
