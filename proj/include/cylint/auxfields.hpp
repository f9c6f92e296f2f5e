#ifndef CYLINT_AUXFIELDS_HPP
#define CYLINT_AUXFIELDS_HPP

#include <Eigen/Dense>
#include <functional>

#include "cylint/function1d.hpp"
#include "cylint/geometry.hpp"

namespace cylint {

// The five auxiliary functions rho(r), sigma(r), tau(phi), psi(phi), mu(Z)
// that parameterize all solutions of the second-order determining equations.
struct AuxQuintuple {
    Function1D rho;    // of r
    Function1D sigma;  // of r
    Function1D tau;    // of phi, 2*pi-periodic
    Function1D psi;    // of phi, 2*pi-periodic
    Function1D mu;     // of Z

    static AuxQuintuple zero();
};

// Periodicity of tau and psi, sampled; throws ValidationError on failure.
void validate_periodicity(const AuxQuintuple& aux);

// Integral coefficient vectors (s1, s2) generated by the quintuple:
//   s1 = (psi', -psi/r - r^2 mu + rho, tau)
//   s2 = (0, mu, -tau/r^2 + sigma)
std::pair<Eigen::Vector3d, Eigen::Vector3d> s_coeffs_from_aux(const AuxQuintuple& aux,
                                                              const CylPoint& at);

// Magnetic field generated by the quintuple:
//   B^r   = -r^2 mu'/2 + tau'/(2 r^2)
//   B^phi = tau/r^3 + sigma'/2
//   B^Z   = -psi/(2 r^2) + r mu - rho'/2 - psi''/(2 r^2)
FieldTriple b_field_from_aux(const AuxQuintuple& aux, const CylPoint& at);

// Coefficient matrix of the linear algebraic system M . grad(W) = (0, 0, alpha).
Eigen::Matrix3d matrix_M(const AuxQuintuple& aux, const CylPoint& at);

// Closed form 4 r^9 psi'(phi) mu(Z) sigma(r) of det(matrix_M).
double det_M(const AuxQuintuple& aux, const CylPoint& at);

// Inhomogeneity of the third row of the linear system; vanishes for every
// solution of the determining equations.
double alpha(const AuxQuintuple& aux, const CylPoint& at);

// Scalar field of (r, phi, Z) with value-only access; derivatives are taken by
// finite differences where needed.
using ScalarField = std::function<double(const CylPoint&)>;

struct ReducedResiduals {
    // [0] aux condition A-a, [1] aux condition A-b,
    // [2..4] mixed-derivative conditions on W (r-phi, phi-Z, r-Z),
    // [5..7] rows of M . grad(W) - (0, 0, alpha).
    Eigen::Matrix<double, 8, 1> raw;
    Eigen::Matrix<double, 8, 1> normalized;  // raw / max |summand| per equation
};

// Evaluates the reduced determining system at a point, with analytic aux
// derivatives and 4th-order finite differences of W (step 1e-4 scaled).
ReducedResiduals reduced_residuals(const AuxQuintuple& aux, const ScalarField& W,
                                   const CylPoint& at);

}  // namespace cylint

#endif
