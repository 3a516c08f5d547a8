#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irrsim {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A computed rate or probability left the representable range.
class NumericRangeError : public Error {
public:
    using Error::Error;
};

// rho drives a Dixon-Coles correction factor negative (or to zero where a
// log is required). match_index() is set when the offending value came from
// a specific observation.
class InvalidRhoError : public Error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit InvalidRhoError(const std::string& what, std::size_t match_index = npos)
        : Error(what), match_index_(match_index) {}

    std::size_t match_index() const noexcept { return match_index_; }

private:
    std::size_t match_index_;
};

class FitDegenerateError : public Error {
public:
    using Error::Error;
};

class SingularInformationError : public Error {
public:
    using Error::Error;
};

class GenerationFailure : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DuplicateKeyError : public Error {
public:
    DuplicateKeyError(const std::string& key, std::size_t line)
        : Error("line " + std::to_string(line) + ": duplicate key '" + key + "'"),
          key_(key), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string key_;
    std::size_t line_;
};

}  // namespace irrsim
