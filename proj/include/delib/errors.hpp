#pragma once
#include <stdexcept>
#include <string>

namespace delib {

enum class ErrorCode {
    DuplicateId,
    OrphanComment,
    CycleDetected,
    MissingAlignment,
    UnexpectedAlignment,
    SyntaxError,
    SchemaError,
    InvalidCap,
    EmptyPolarity,
    InvalidConfig,
    NotFound,
    IoError,
};

const char* to_string(ErrorCode code);

// Single exception type for all validation and data errors. The CLI maps it
// to exit code 1; usage errors never reach this path.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code),
          message_(message) {}

    ErrorCode code() const { return code_; }
    const std::string& message() const { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::OrphanComment: return "OrphanComment";
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::MissingAlignment: return "MissingAlignment";
        case ErrorCode::UnexpectedAlignment: return "UnexpectedAlignment";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::InvalidCap: return "InvalidCap";
        case ErrorCode::EmptyPolarity: return "EmptyPolarity";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::IoError: return "IoError";
    }
    return "Error";
}

} // namespace delib
