#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace actfort {

enum class Errc {
  UnknownFactorKind,
  MissingQualifier,
  InvalidMask,
  LengthMismatch,
  SchemaError,
  DanglingReference,
  DuplicateAccountId,
  UnknownAccount,
  NoChainFound,
  EmptyEcosystem,
};

std::string_view errc_name(Errc code);

/// Error thrown by all engine operations. `code()` identifies the failure
/// class; `what()` names the offending account id or document location.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace actfort
