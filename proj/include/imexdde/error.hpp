#pragma once

#include <stdexcept>
#include <string>

namespace imexdde {

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  invalid_argument = 1,
  unsupported_order,
  step_size,
  factorization,
  domain,
  domain_unconditional,  // r at or below the unconditional threshold
  domain_no_guarantee,   // r above 1
  degenerate_polynomial,
  pole,
  shape,
  definiteness,
  not_simultaneously_diagonalizable,
  degenerate_pairing,
  unknown_problem,
  missing_exact,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace imexdde
