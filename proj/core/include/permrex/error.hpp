#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace permrex {

enum class ErrorCode {
  SyntaxError,
  SymbolOutOfRange,
  CompactOverflow,
  InvalidSize,
  SizeCap,
  InvalidArgs,
  CapExceeded,
  DomainError,
  UndecidedAtPrecision,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` identifies the contract
/// violation; `offset()` is set for parse errors (byte offset into the input).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> offset = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace permrex
