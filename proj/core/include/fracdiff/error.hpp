#pragma once

#include <stdexcept>
#include <string>

namespace fracdiff {

/// Argument outside the documented domain of an operation.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Vector or matrix sizes that do not agree.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A construction whose a-posteriori contract could not be met
/// (SOE tolerance, non-positive preconditioner spectrum, ...).
class ConstructionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(what);
}

inline void require_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw DimensionMismatch(std::string(what) + ": expected length " + std::to_string(want) +
                                ", got " + std::to_string(got));
    }
}

}  // namespace detail
}  // namespace fracdiff
