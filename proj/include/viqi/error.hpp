#pragma once

#include <stdexcept>
#include <string>

namespace viqi {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed document (bad JSON, unknown node type, missing key).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that breaks a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Input too small for the requested operation (empty manifest, < 2 items).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Two trees built over different field-id universes.
class NotComparableError : public Error {
public:
    using Error::Error;
};

/// Synthetic layout request that cannot be satisfied.
class GenerationError : public Error {
public:
    using Error::Error;
};

} // namespace viqi
