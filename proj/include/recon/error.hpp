#pragma once

#include <stdexcept>
#include <string>

namespace recon {

enum class ErrorCode {
    AlphabetMismatch,
    ArityError,
    InvalidSequence,
    InvalidSourceSequence,
    TooLarge,
    GadgetTooLarge,
    BadOrder,
    BadParams,
    IndexOutOfRange,
    NotSatisfying,
    EndpointNotSatisfying,
    NotACover,
    RetriesExhausted,
    Unsatisfiable,
    ParseError,
};

const char* error_code_name(ErrorCode c);

/// Domain error carrying a machine-readable code. The CLI maps these to
/// exit status 1; anything else escaping main is a bug.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}

    ErrorCode code() const { return code_; }
    const char* code_name() const { return error_code_name(code_); }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

}  // namespace recon
