#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace econokit {

// Base for all library errors. Subtypes mirror the distinct failure
// modes callers are expected to handle separately.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input/validation errors (CLI exit code 1).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class MalformedRow : public ParseError {
public:
    using ParseError::ParseError;
};

class DuplicateKey : public ParseError {
public:
    using ParseError::ParseError;
};

class EmptySeries : public Error {
public:
    using Error::Error;
};

class UnknownCurrency : public Error {
public:
    using Error::Error;
};

class EmptyPeriod : public Error {
public:
    using Error::Error;
};

class NotNormalized : public Error {
public:
    using Error::Error;
};

class NegativeInput : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class DistrictMismatch : public Error {
public:
    using Error::Error;
};

class ZeroTotal : public Error {
public:
    using Error::Error;
};

class TooShort : public Error {
public:
    using Error::Error;
};

class AllDegenerate : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace econokit
