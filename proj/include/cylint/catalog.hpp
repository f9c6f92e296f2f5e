#ifndef CYLINT_CATALOG_HPP
#define CYLINT_CATALOG_HPP

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cylint/auxfields.hpp"
#include "cylint/geometry.hpp"
#include "cylint/odes.hpp"

namespace cylint {

// A fully realized integrable system: scalar potential, radial-gauge vector
// potential with exact partials, magnetic field, and the coefficients of the
// two quadratic integrals of motion.
struct SystemInstance {
    std::string family_id;
    std::map<std::string, double> params;
    AuxQuintuple aux;

    std::function<double(const CylPoint&)> W;
    std::function<Eigen::Vector3d(const CylPoint&)> gradW;    // (W_r, W_phi, W_Z)
    std::function<Eigen::Vector3d(const CylPoint&)> A;        // (A_r, A_phi, A_Z)
    std::function<Eigen::Matrix3d(const CylPoint&)> jacA;     // dA_i / d(r, phi, Z)
    std::function<FieldTriple(const CylPoint&)> B;
    std::function<Eigen::Vector3d(const CylPoint&)> s1, s2;
    std::function<double(const CylPoint&)> m1, m2;

    // First-order reductions of X1 / X2 where the family admits them.
    std::function<double(const CylPhase&)> x1_lin;  // null when absent
    std::function<double(const CylPhase&)> x2_lin;

    Eigen::Vector3d covariant_momentum(const CylPhase& ph) const;
};

enum class Observable { X1, X2, H };

// X1 = (p_phi^A)^2 + s1 . p^A + m1, X2 = (p_Z^A)^2 + s2 . p^A + m2,
// H = ((p_r^A)^2 + (p_phi^A)^2/r^2 + (p_Z^A)^2)/2 + W.
double integral_value(const SystemInstance& sys, Observable which, const CylPhase& ph);

struct LinearIntegrals {
    std::function<double(const CylPhase&)> x1;  // may be null individually
    std::function<double(const CylPhase&)> x2;
};

// Throws UnsupportedError when the family admits no first-order reduction.
LinearIntegrals first_order_integrals(const SystemInstance& sys);

// Throws Rank3Error when psi' != 0, mu != 0 and sigma != 0 simultaneously
// (sampled over the verification box): such systems do not exist.
void validate_rank(const AuxQuintuple& aux);

// ---------------------------------------------------------------------------
// Family parameter sets.

struct F1Params {  // uniform-axial
    Function1D rho = fn_zero();
    Function1D sigma = fn_zero();
    Function1D W1 = fn_zero();
    double tau0 = 0.0;
    double mu0 = 0.0;
};

struct F2Params {  // exotic-beta
    double sigma0 = 0.0, tau0 = 0.0, tau1 = 0.0, W0 = 0.0;
    double f1 = 0.0, beta1 = 0.0, beta2 = 0.0, phi0 = 0.0;
    std::string profile = "closed";  // closed | numeric
    double gamma0 = 0.0, dgamma0 = 0.0;  // numeric profile initial data at phi = 0
};

// One profile slot of the elliptic family: the function itself plus the
// coefficients of the cubic first integral y'^2 = C y^3 + c1 y^2 + c2 y + c3.
struct MTProfile {
    Function1D f;
    double C = 0.0;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    bool constant = false;  // constant profile: shared-C constraint is vacuous
};

MTProfile profile_const(double value, double c1 = 0.0);
// Example 1: M1 > M2 > M(Z) > M3, C > 0, bounded Jacobi-sn^2 solution.
MTProfile profile_jacobi_ex1(double M1, double M2, double M3, double C);
// Example 2: M(Z) > M1 > M2 > M3, C > 0; has poles at sn^2 = 1.
MTProfile profile_jacobi_ex2(double M1, double M2, double M3, double C);
// Example 3: double root M1 = M2, tanh^2 profile.
MTProfile profile_elem_ex3(double M1, double M3, double C);
// Example 4: double root M2 = M3, poles at sin^2 = 1.
MTProfile profile_elem_ex4(double M1, double M2, double C);
// C = 0 exponential branch (M-slot): (k1 e^{k0 x} - k2 e^{-k0 x} + k3)/k0.
MTProfile profile_exp(double k0, double k1, double k2, double k3);
// C = 0 trigonometric branch (T-slot): (k1 sin(k0 x) - k2 cos(k0 x) + k3)/k0.
MTProfile profile_trig(double k0, double k1, double k2, double k3);
// Dense numeric solution of the cubic first-integral ODE.
MTProfile profile_numeric(const ProfileSolution& sol, double C, double c1, double c2,
                          double c3);

struct F3Params {  // elliptic-MT
    MTProfile M;  // profile in Z
    MTProfile T;  // profile in phi; T' must be 2*pi-periodic
    double w0 = 0.0;
    Function1D W1 = fn_zero();
    bool swap_coupling = false;  // investigation switch for the separation constants
};

struct F4Params {  // axial-mu-rho
    Function1D mu = fn_zero();
    Function1D rho = fn_zero();
    Function1D W1 = fn_zero();
    Function1D W3 = fn_zero();
};

struct F5Params {  // tau-sigma
    Function1D tau = fn_zero();
    Function1D sigma = fn_zero();
    Function1D W1 = fn_zero();
    Function1D W2 = fn_zero();
};

struct F6Params {  // polar-x-free
    Function1D rho = fn_zero();
    Function1D W1 = fn_zero();
    Function1D W3 = fn_zero();
};

struct F7Params {  // sigma-only
    Function1D sigma = fn_zero();
    Function1D W1 = fn_zero();
    Function1D W2 = fn_zero();
};

// User-constrained 2-D polar system: construction is gated by the reduced
// determining-system residuals.
struct F8Params {
    Function1D psi = fn_zero();
    Function1D rho = fn_zero();
    double tau0 = 0.0;
    double sigma0 = 0.0;
    // W12(r, phi) = W1(r) + W2(phi)/r^2; admissibility is decided by the gate.
    Function1D W1 = fn_zero();
    Function1D W2 = fn_zero();
    double gate_tol = 1e-6;
};

SystemInstance build_f1(const F1Params& p);
SystemInstance build_f2(const F2Params& p);
SystemInstance build_f3(const F3Params& p);
SystemInstance build_f4(const F4Params& p);
SystemInstance build_f5(const F5Params& p);
SystemInstance build_f6(const F6Params& p);
SystemInstance build_f7(const F7Params& p);
SystemInstance build_f8(const F8Params& p);

struct FamilyDescriptor {
    std::string id;
    std::string name;
    std::string summary;
    std::vector<std::string> parameters;
    std::vector<std::string> constraints;
};

const std::vector<FamilyDescriptor>& family_catalog();
const FamilyDescriptor& describe_family(const std::string& id);  // ValidationError if unknown

}  // namespace cylint

#endif
