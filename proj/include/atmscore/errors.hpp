#pragma once

#include <stdexcept>
#include <string>

namespace atmscore {

// Exit-code taxonomy used by the CLI:
//   1  validation / schema / config
//   2  i/o
//   3  domain / numeric
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

    const std::string& module() const { return module_; }
    virtual int exit_code() const { return 1; }

private:
    std::string module_;
};

// Input data violates a stated invariant (duplicate keys, out-of-range values,
// malformed rows, bad config). Parse failures carry the 1-based row number in
// the message.
class ValidationError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 1; }
};

// Header/column contract violations. The message names the offending column.
class SchemaError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IoError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 2; }
};

// Mathematical precondition violations (empty softmax input, n < k, alpha
// outside [0,1], ...).
class DomainError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

}  // namespace atmscore
