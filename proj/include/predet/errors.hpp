#pragma once

#include <stdexcept>
#include <string>

namespace predet {

// Failure classes surfaced by the library. Callers that need to branch on
// the cause (CLI exit codes, python bindings) switch on the kind; the
// message carries the specifics.
enum class ErrorKind {
    InvalidInput,
    UnsupportedExponent,
    OutsideLogDomain,
    NotUnitary,
    BranchCut,
    NoNormalForm,
    InvalidGenus,
    NotACycle,
    NotARelator,
    PathTooCoarse,
    EndpointMismatch,
    DefectTooLarge,
    AmbiguousBranch,
    TraceNotPreserved,
    ConsistencyFailure,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace predet
