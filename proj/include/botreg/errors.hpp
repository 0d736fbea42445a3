#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace botreg {

// Input-side failures: malformed files, violated preconditions, bad
// configuration. The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The computation itself failed (non-convergence, numerical breakdown).
// Exit code 3.
class RuntimeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    using InputError::InputError;
};

class RangeError : public InputError {
public:
    using InputError::InputError;
};

class ValueError : public InputError {
public:
    using InputError::InputError;
};

class DuplicateIdError : public InputError {
public:
    using InputError::InputError;
};

class MissingProfileError : public InputError {
public:
    using InputError::InputError;
};

class MissingScoresError : public InputError {
public:
    using InputError::InputError;
};

class EmptyViewError : public InputError {
public:
    using InputError::InputError;
};

class EmptyInputError : public InputError {
public:
    using InputError::InputError;
};

class TemporalError : public InputError {
public:
    using InputError::InputError;
};

// A vector built for one feature set was handed to a consumer expecting
// another.
class FeatureSetMismatchError : public InputError {
public:
    using InputError::InputError;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

class ConfigError : public InputError {
public:
    using InputError::InputError;
};

class PairingError : public InputError {
public:
    using InputError::InputError;
};

class IoError : public InputError {
public:
    using InputError::InputError;
};

class NotPositiveDefiniteError : public RuntimeFailure {
public:
    NotPositiveDefiniteError(const std::string& what, std::size_t pivot)
        : RuntimeFailure(what), pivot_index(pivot) {}
    std::size_t pivot_index;
};

class ConvergenceError : public RuntimeFailure {
public:
    using RuntimeFailure::RuntimeFailure;
};

}  // namespace botreg
