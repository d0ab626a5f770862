#pragma once

#include <stdexcept>
#include <string>

namespace maxrank {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input: bad text, unknown variables, mixed
// fields, parameters outside their documented domain. Maps to CLI exit 2.
class InputError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    using InputError::InputError;
};

class FieldMismatchError : public InputError {
public:
    using InputError::InputError;
};

class UnknownVariableError : public InputError {
public:
    using InputError::InputError;
};

// Field characteristic too small for an operation (e.g. d! not invertible).
class CharacteristicError : public InputError {
public:
    using InputError::InputError;
};

// A configured resource budget was exceeded. Maps to CLI exit 3.
class ResourceError : public Error {
public:
    using Error::Error;
};

class BudgetExceededError : public ResourceError {
public:
    using ResourceError::ResourceError;
};

class DimensionLimitError : public ResourceError {
public:
    using ResourceError::ResourceError;
};

} // namespace maxrank
