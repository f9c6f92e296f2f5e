#ifndef CYLINT_ERRORS_HPP
#define CYLINT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cylint {

// Evaluation outside the admissible region (r below r_min, profile span, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Point on the z-axis: phi is undefined there.
struct AxisError : DomainError {
    explicit AxisError(const std::string& msg) : DomainError(msg) {}
};

// Parameter set violates a family schema or constraint.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Auxiliary functions with psi' != 0, mu != 0 and sigma != 0 simultaneously:
// the determining system is inconsistent and admits no potential.
struct Rank3Error : ValidationError {
    explicit Rank3Error(const std::string& msg) : ValidationError(msg) {}
};

// User-supplied data failed the numerical residual gate.
struct ResidualGateError : ValidationError {
    explicit ResidualGateError(const std::string& msg) : ValidationError(msg) {}
};

// Initial data of a profile ODE does not satisfy its first integral.
struct InconsistentInitialData : ValidationError {
    explicit InconsistentInitialData(const std::string& msg) : ValidationError(msg) {}
};

// Profile became non-positive where positivity is required.
struct PositivityLoss : std::runtime_error {
    explicit PositivityLoss(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative scheme failed to converge.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation not available for this family.
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

// Minimum admissible radius. Defaults to 1e-6; the environment variable
// CYLINT_RMIN overrides it at process start.
double r_min();
void set_r_min(double value);

}  // namespace cylint

#endif
