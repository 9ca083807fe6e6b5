#pragma once

#include <stdexcept>
#include <string>

namespace alt {

enum class ErrorKind {
    Validation,  // bad parameters, malformed input, contract violations
    Io,          // file system failures
    Numeric      // solver non-convergence and similar
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_validation(const std::string& msg) {
    throw Error(ErrorKind::Validation, msg);
}

[[noreturn]] inline void throw_io(const std::string& msg) {
    throw Error(ErrorKind::Io, msg);
}

[[noreturn]] inline void throw_numeric(const std::string& msg) {
    throw Error(ErrorKind::Numeric, msg);
}

}  // namespace alt
