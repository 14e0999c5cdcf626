#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pqw {

enum class ErrorCode {
    ParameterError,
    NoInverse,
    ReconstructFailed,
    BadRequest,
    UserExists,
    UnknownUser,
    AuthFailed,
    RateLimited,
    VersionConflict,
    StoreCorrupt,
    TransportError,
    UsageError,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(detail), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

// Wire names for the codes that cross the protocol boundary.
std::string_view error_name(ErrorCode code);
ErrorCode error_from_name(std::string_view name);

}  // namespace pqw
