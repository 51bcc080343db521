#pragma once

#include <stdexcept>
#include <string>

namespace lfwa {

/// A precondition on caller-supplied values was violated.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A dataset file could not be parsed or failed validation.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Experiment configuration is malformed.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The search itself failed, e.g. the objective produced a non-finite value.
class RuntimeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lfwa
