#pragma once

#include <stdexcept>
#include <string>

namespace simplexvol {

// Malformed input: bad documents, bad flags, violated type invariants.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input is well-formed but outside the operation's geometric domain
// (wrong classification, wrong signature, degenerate simplex, ...).
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal numeric failure: solver non-convergence, lost precision.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Diagonal-perturbation search exhausted its retry budget.
class PerturbationError : public NumericError {
public:
    PerturbationError(const std::string& msg, double best_gap)
        : NumericError(msg), best_gap(best_gap) {}
    double best_gap;
};

} // namespace simplexvol
