#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trsta {

enum class ErrorKind {
  InvalidPosition,
  AlphabetClash,
  BadEncodingSymbols,
  VariableLhs,
  FreeVariableInRhs,
  ArityMismatch,
  UnknownSymbol,
  NotInvertible,
  AlphabetsNotDisjoint,
  ForeignSymbol,
  AlphabetMismatch,
  UnsupportedTrs,
  Parse,
};

/// Machine-readable token for an error kind, e.g. "unsupported-trs".
std::string_view error_kind_name(ErrorKind kind);

/// Every failure reported by the library is an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace trsta
