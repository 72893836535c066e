/// @file errors.hpp
/// @brief Exception types shared by the solvers, diagnostics and CLI.

#pragma once

#include <stdexcept>
#include <string>

namespace henle {

/// Non-finite argument handed to a pointwise model function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid parameters, grid or configuration (rejected before any solve).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inputs that are individually valid but do not fit together
/// (missing traces, mismatched grids, short samples).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A Picard window failed to converge within its iteration cap.
class NonContractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solver blew up (NaN/Inf) or another failure during integration.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace henle
