#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace uavcollect {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed scenario/config document. `field()` names the offending key.
class ParseError : public Error {
public:
    ParseError(std::string field, const std::string& what)
        : Error("parse error at '" + field + "': " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A link threshold cannot be met at any distance, or a plan cannot be built.
class InfeasibleConfiguration : public Error {
public:
    using Error::Error;
};

class CoverageViolation : public Error {
public:
    using Error::Error;
};

class InfeasibleTopology : public InfeasibleConfiguration {
public:
    using InfeasibleConfiguration::InfeasibleConfiguration;
};

class InfeasibleWaypoint : public InfeasibleConfiguration {
public:
    using InfeasibleConfiguration::InfeasibleConfiguration;
};

} // namespace uavcollect
