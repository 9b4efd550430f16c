#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zgv {

enum class ErrorCode {
  InvalidArgument,
  SingularPencil,
  NotBiregular,
  SingularDelta0,
  ProjectedPencilSingular,
  NoConvergence,
  DivergedIterate,
  NotOnCurve,
  NotCritical,
  DegenerateResultant,
  NotHermitian,
  NotIndefinite,
  NotStable,
  SingularLeadingCoeff,
  InvalidWeight,
};

std::string_view to_string(ErrorCode code);

/// Input errors are caller mistakes (shape, domain, pre-conditions); everything
/// else is a numerical failure of an otherwise valid request.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zgv
