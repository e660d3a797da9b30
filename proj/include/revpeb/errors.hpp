#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace revpeb {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text: graph files, move logs, colorings, strategies.
class ParseError : public Error {
public:
    using Error::Error;
};

// A semantic check failed: illegal pebble move, invalid coloring, bad
// matching step, broken strategy tree. Carries the 0-based index of the
// offending item when there is one (move index, step index, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what,
                             std::optional<long long> index = std::nullopt)
        : Error(what), index_(index) {}

    std::optional<long long> index() const { return index_; }

private:
    std::optional<long long> index_;
};

// Exhaustive searches refuse inputs beyond their documented size caps.
class SizeCapError : public Error {
public:
    using Error::Error;
};

}  // namespace revpeb
