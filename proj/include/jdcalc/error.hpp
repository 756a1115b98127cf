#pragma once

#include <stdexcept>
#include <string>

namespace jdcalc {

/// Invalid argument to a library operation (chart mismatch, bad index, ...).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// An operation whose contract requires a verified Jacobi structure was
/// handed an unverified one.
struct not_verified_error : std::runtime_error {
    explicit not_verified_error(const std::string& what) : std::runtime_error(what) {}
};

/// Structure-file / expression syntax error with a source position.
struct parse_error : std::runtime_error {
    int line;
    int column;
    parse_error(int line_, int column_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ", col " +
                             std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

} // namespace jdcalc
