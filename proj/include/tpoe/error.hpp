// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tpoe {

enum class ErrorCode {
  kDomainMismatch,
  kNonHermitian,
  kInvalidArgument,
  kSingularMode,
  kNotPurelyPeriodic,
  kNotTimeConstant,
  kNonSolenoidal,
  kIncompatibleMean,
  kInvalidExponent,
  kInvalidGrid,
  kUnknownRecipe,
  kEmptySweep,
  kIoFailure,
  kInternal,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(error_name(code)) + ": " + message);
}

}  // namespace tpoe
