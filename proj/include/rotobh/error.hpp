#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rotobh {

enum class ErrorCode {
  config,
  domain,
  degenerate_gap,
  invalid_expansion,
  out_of_reach,
  out_of_range,
  convergence,
};

std::string_view to_string(ErrorCode code) noexcept;

// Parses the names produced by to_string; throws Error(config) otherwise.
ErrorCode error_code_from_string(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Process exit status used by the command-line front end.
int exit_status(ErrorCode code) noexcept;

}  // namespace rotobh
