#pragma once

#include <stdexcept>
#include <string>

namespace heatlab {

/// Precondition violated by a caller-supplied argument.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The state is too close to zero for an operation that divides by it.
class DegenerateState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bounded search (halving, m scan) ran out of candidates.
class SearchFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mollification tolerance unreachable at the minimum margin.
class MollificationFailure : public SearchFailure {
public:
    using SearchFailure::SearchFailure;
};

/// Config validation error that names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Failure inside a multi-stage pipeline, tagged with the stage name.
class StageFailure : public std::runtime_error {
public:
    StageFailure(std::string stage, const std::string& what, double achieved = -1.0)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)), achieved_(achieved) {}
    const std::string& stage() const noexcept { return stage_; }
    /// Best error reached before failing, or a negative value when unknown.
    double achieved() const noexcept { return achieved_; }

private:
    std::string stage_;
    double achieved_;
};

}  // namespace heatlab
