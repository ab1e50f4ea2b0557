#include "rotobh/error.hpp"

#include <array>
#include <utility>

namespace rotobh {

namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 7> kNames{{
    {ErrorCode::config, "config"},
    {ErrorCode::domain, "domain"},
    {ErrorCode::degenerate_gap, "degenerate_gap"},
    {ErrorCode::invalid_expansion, "invalid_expansion"},
    {ErrorCode::out_of_reach, "out_of_reach"},
    {ErrorCode::out_of_range, "out_of_range"},
    {ErrorCode::convergence, "convergence"},
}};

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "unknown";
}

ErrorCode error_code_from_string(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  throw Error(ErrorCode::config, "unknown error code '" + std::string(name) + "'");
}

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::config:
      return 2;
    case ErrorCode::convergence:
      return 4;
    default:
      return 3;
  }
}

}  // namespace rotobh
