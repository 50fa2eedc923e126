#ifndef ITSP_ERRORS_HPP
#define ITSP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace itsp {

/// Instance or argument rejected before any computation ran (CLI exit 2).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A solver lost numeric footing (suspected cycling, vanishing pivots; CLI exit 3).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested size exceeds an enumeration cap. Never downgraded to an
/// approximation; the caller must shrink the instance or raise ITSP_MAX_N.
class CapError : public std::runtime_error {
public:
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace itsp

#endif // ITSP_ERRORS_HPP
