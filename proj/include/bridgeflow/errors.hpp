#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bridgeflow {

// Base class for all library failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad dimensions, negative weights, non-probability vectors.
struct ValidationError : Error {
    using Error::Error;
};

// Input document could not be parsed at all.
struct ParseError : Error {
    using Error::Error;
};

// Iteration budget exhausted before the tolerance was met.
struct NonConvergence : Error {
    NonConvergence(std::size_t iterations_, double residual_)
        : Error("no convergence after " + std::to_string(iterations_) +
                " iterations, residual " + std::to_string(residual_)),
          iterations(iterations_),
          residual(residual_) {}

    std::size_t iterations;
    double residual;
};

// A marginal places mass on states the prior cannot transport any mass to.
struct InfeasibleSupport : Error {
    using Error::Error;
};

// A potential vanishes on a state the policy assembly needs.
struct ZeroPotential : Error {
    using Error::Error;
};

// Strict structural gate of the stationary solver.
struct NotFullyIndecomposable : Error {
    using Error::Error;
};

// Prior matrix has a row without any outgoing weight.
struct ZeroRow : Error {
    using Error::Error;
};

struct NotSymmetric : ValidationError {
    using ValidationError::ValidationError;
};

struct NotStochastic : ValidationError {
    using ValidationError::ValidationError;
};

}  // namespace bridgeflow
