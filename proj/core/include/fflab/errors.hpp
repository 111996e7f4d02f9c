#pragma once

#include <stdexcept>
#include <string>

namespace fflab {

// Argument outside the mathematical domain of an operation (chart domains,
// validity regions, singular radii, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid parameter value (sign conditions, tolerances out of range, ...).
class ValueError : public std::invalid_argument {
public:
    explicit ValueError(const std::string& what) : std::invalid_argument(what) {}
};

// Geometric preconditions violated (support touching the boundary layer, ...).
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solver exceeded its iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Dense factorization hit a (near-)singular pivot or failed the residual check.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Taylor model evaluated outside its trust region.
class OutOfRadiusError : public std::runtime_error {
public:
    explicit OutOfRadiusError(const std::string& what) : std::runtime_error(what) {}
};

// Too few Fourier coefficients above the noise floor to fit a decay rate.
class InsufficientSignalError : public std::runtime_error {
public:
    explicit InsufficientSignalError(const std::string& what) : std::runtime_error(what) {}
};

// Series truncation never certified (mode amplitudes refused to decay).
class NonconvergenceError : public std::runtime_error {
public:
    explicit NonconvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fflab
