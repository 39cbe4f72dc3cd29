#pragma once

#include <stdexcept>
#include <string>

namespace cla {

// Malformed input: bad file contents, out-of-range indices, arity mismatches.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax error with source position.
class ParseError : public InputError {
public:
    ParseError(const std::string& msg, int line, int column)
        : InputError("line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + msg),
          line(line), column(column) {}

    int line;
    int column;
};

// An enumeration or pair universe grew past its configured cap.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cla
