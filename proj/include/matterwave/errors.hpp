#pragma once

#include <stdexcept>
#include <string>

namespace mw {

/// Input outside the mathematical domain of an operation (negative density,
/// zero velocity, |beta| >= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inconsistent setup, e.g. a grid that is not commensurate with the wave
/// being sampled on it.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require(bool cond, const std::string& what)
{
    if (!cond) throw DomainError(what);
}

inline void require_config(bool cond, const std::string& what)
{
    if (!cond) throw ConfigError(what);
}

} // namespace detail
} // namespace mw
