// errors.hpp: typed failures shared by every module
#pragma once

#include <stdexcept>
#include <string>

namespace cct {

// Input outside the mathematical domain of an operation (bad parameters,
// points off the contour, non-decaying correlators, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical procedure did not reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved = 0.0)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Boundary-value determinant vanishes: coefficients diverge near `time`.
class SingularityError : public NumericalError {
public:
    SingularityError(const std::string& what, double time)
        : NumericalError(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

// A physical invariant that should hold for valid inputs was violated.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scenario/config validation failure; `path` is the offending field, e.g.
// "environment.stochastic.sigma".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& msg)
        : std::runtime_error(path + ": " + msg), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace cct
