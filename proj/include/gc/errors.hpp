#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gc {

/// Malformed input text. Carries a 1-based line and column.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                             message),
          line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// An operation was called outside its domain (bad bound, invalid forest, wrong vocabulary...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A result failed one of its own postconditions. Never expected; reported with exit code 4 by the CLI.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace gc
