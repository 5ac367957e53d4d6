#pragma once

#include <stdexcept>
#include <string>

namespace mcw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    int line, col;
    ParseError(int line_, int col_, const std::string& reason)
        : Error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + reason), line(line_), col(col_) {}
};

struct UnknownLabel : Error {
    using Error::Error;
};

// malformed expression or input instance
struct ValidationError : Error {
    using Error::Error;
};

struct JoinPreconditionViolated : Error {
    using Error::Error;
};

// an exact routine refuses the input size
struct TooLarge : Error {
    using Error::Error;
};

struct GenerationFailed : Error {
    using Error::Error;
};

struct RedundantExpressionTooLarge : TooLarge {
    using TooLarge::TooLarge;
};

struct InstanceTooLarge : TooLarge {
    using TooLarge::TooLarge;
};

}  // namespace mcw
