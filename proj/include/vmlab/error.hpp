#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vmlab {

/// Failure categories shared by the engine, the service and the CLI.
enum class ErrorCode {
    MalformedInput,
    NotFound,
    AlreadyAnswered,
    OutOfRange,
    InvalidArgument,
    Internal,
};

std::string_view to_string(ErrorCode code);

class LabError : public std::runtime_error {
  public:
    LabError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace vmlab
