#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace capit {

/// Base class for every error raised on domain input (bad groups, bad
/// discriminants, malformed patterns). Usage errors of the CLI are separate.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A text input could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An operation that needs p-rank 2 was handed a group of a different rank.
class RankMismatch : public Error {
public:
    using Error::Error;
};

/// Input that is well formed but mathematically inadmissible.
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace capit
