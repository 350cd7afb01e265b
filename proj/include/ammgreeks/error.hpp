#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace ammgreeks {

/// Input outside the mathematical domain of an operation (non-positive price,
/// negative time to maturity, non-finite value, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Contract between two instruments does not hold (hedge strike mismatch,
/// finite-difference step leaving the valid domain, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Monte Carlo payoff evaluated to a non-finite number.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Scenario file is malformed or violates the schema. The message names the
/// offending field (and line, for syntax errors).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

inline void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(v));
}

inline void require_non_negative(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw DomainError(std::string(name) + " must be non-negative and finite, got " + std::to_string(v));
}

}  // namespace detail
}  // namespace ammgreeks
