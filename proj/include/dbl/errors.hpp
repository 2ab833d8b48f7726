#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dbl {

/// Malformed input text. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Index and graph disagree (e.g. the graph grew without the index being told).
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Corrupt or unsupported binary snapshot.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A generator could not produce the requested number of items.
class ExhaustedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dbl
