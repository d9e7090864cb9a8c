#pragma once

#include <stdexcept>
#include <string>

namespace v2x {

enum class ErrorCode {
    argument,  // bad in-process argument (null, out of range)
    parse,     // malformed input document (XML, CSV, config, sweep)
    io,        // file open/read/write failure
    geometry,  // invalid geometric primitive
    spec,      // infeasible scenario specification
    config,    // inconsistent or invalid resolved configuration
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace v2x
