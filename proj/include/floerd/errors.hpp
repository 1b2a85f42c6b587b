#pragma once

#include <stdexcept>
#include <string>

namespace floerd {

// Precondition or mathematical-consistency failure (CLI exit code 1).
struct math_error : std::runtime_error {
    explicit math_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Complex too large to materialize; carries the projected generator count.
struct size_error : math_error {
    long long projected;
    size_error(const std::string& msg, long long projected_count)
        : math_error(msg), projected(projected_count) {}
};

// Truncation window failed its stability re-check.
struct window_error : math_error {
    explicit window_error(const std::string& msg) : math_error(msg) {}
};

// Knot-expression syntax error; position is a 0-based byte offset.
struct parse_error : math_error {
    size_t position;
    parse_error(const std::string& msg, size_t pos)
        : math_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// Filesystem failure (CLI exit code 2).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace floerd
