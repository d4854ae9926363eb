#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lierep {

// Process exit codes used by the command line front end.
enum class ErrorCode : int {
    internal = 1,
    parse = 2,
    not_selfdual = 3,
    overflow = 4,
    resource_limit = 5,
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::internal: return "internal";
    case ErrorCode::parse: return "parse";
    case ErrorCode::not_selfdual: return "not-selfdual";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::resource_limit: return "resource-limit";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

// Malformed user input: bad text, negative coordinates, rank mismatch.
class InvalidArgument : public Error {
  public:
    explicit InvalidArgument(const std::string &what)
        : Error(ErrorCode::parse, what) {}
};

class NotSelfdual : public Error {
  public:
    explicit NotSelfdual(const std::string &what)
        : Error(ErrorCode::not_selfdual, what) {}
};

class OverflowError : public Error {
  public:
    explicit OverflowError(const std::string &what)
        : Error(ErrorCode::overflow, what) {}
};

class ResourceLimit : public Error {
  public:
    explicit ResourceLimit(const std::string &what)
        : Error(ErrorCode::resource_limit, what) {}
};

// An engine invariant failed (negative multiplicity, parity mismatch).
class InternalError : public Error {
  public:
    explicit InternalError(const std::string &what)
        : Error(ErrorCode::internal, what) {}
};

} // namespace lierep
