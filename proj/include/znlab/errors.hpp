#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace znlab {

// Domain errors map to CLI exit code 1, config errors to exit code 2.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg, int line = -1)
        : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_number(line) {}
    int line_number;
};

struct OrderMismatchError : DomainError {
    using DomainError::DomainError;
};

struct CapacityError : DomainError {
    CapacityError(const std::string& msg, std::size_t required)
        : DomainError(msg + " (required dimension " + std::to_string(required) + ")"),
          required_dimension(required) {}
    std::size_t required_dimension;
};

struct SolverError : DomainError {
    SolverError(const std::string& msg, double residual_)
        : DomainError(msg + " (residual " + std::to_string(residual_) + ")"),
          residual(residual_) {}
    double residual;
};

struct GeometryError : DomainError {
    using DomainError::DomainError;
};

struct GaugeViolationError : DomainError {
    using DomainError::DomainError;
};

}  // namespace znlab
