#ifndef CYLINT_SPECIALFN_HPP
#define CYLINT_SPECIALFN_HPP

#include "cylint/errors.hpp"

namespace cylint {

// Modulus k of the Jacobi elliptic functions, 0 <= k <= 1.
struct EllipticModulus {
    double k;
    explicit EllipticModulus(double k_);
};

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

// Arithmetic-geometric mean of a, b > 0, converged to relative 1e-15.
double agm(double a, double b);

// Complete elliptic integral of the first kind, K = pi / (2 agm(1, k')).
// Diverges at k = 1 (DomainError).
double ellip_K(EllipticModulus k);

// sn, cn, dn by the descending Landen transformation seeded by the AGM
// sequence. k = 0 and k = 1 reduce to circular and hyperbolic functions.
JacobiTriple jacobi_sn_cn_dn(double u, EllipticModulus k);

}  // namespace cylint

#endif
