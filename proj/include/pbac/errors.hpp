#pragma once

#include <stdexcept>
#include <string>

namespace pbac {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unknown operator id, broken table fixture, bad engine configuration.
struct ConfigError : Error {
    using Error::Error;
};

// Space mismatch or an operator applied outside its space.
struct TypeError : Error {
    using Error::Error;
};

// Bad argument to an otherwise well-configured operation.
struct ArgumentError : Error {
    using Error::Error;
};

// A guarded search or enumeration exceeded its configured cap.
struct ResourceError : Error {
    using Error::Error;
};

// Malformed source text. Positions are 1-based.
struct ParseError : Error {
    ParseError(std::string msg, int line_, int column_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
    int line;
    int column;
};

// A document parsed but failed semantic validation.
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace pbac
