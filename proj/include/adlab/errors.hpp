#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace adlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed literal or record. `token` is the offending fragment or field.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::string token)
        : Error(message + " (at '" + token + "')"), token_(std::move(token)) {}
    const std::string& token() const { return token_; }

private:
    std::string token_;
};

/// Operands live on different ambient spaces.
class SpaceMismatch : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A model or record violates a structural invariant.
///
/// `condition` is a short machine-readable tag, `stage` the chain index it
/// refers to (if any) and `witness` a rendered point or set.
class ValidationError : public Error {
public:
    ValidationError(std::string condition, std::optional<int> stage, std::string witness,
                    const std::string& detail)
        : Error(condition + ": " + detail), condition_(std::move(condition)), stage_(stage),
          witness_(std::move(witness)) {}

    const std::string& condition() const { return condition_; }
    std::optional<int> stage() const { return stage_; }
    const std::string& witness() const { return witness_; }

private:
    std::string condition_;
    std::optional<int> stage_;
    std::string witness_;
};

/// Raised when a caller-supplied stop token fires during a long reduction.
class Cancelled : public Error {
public:
    Cancelled() : Error("computation cancelled") {}
};

} // namespace adlab
