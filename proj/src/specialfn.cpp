#include "cylint/specialfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace cylint {

EllipticModulus::EllipticModulus(double k_) : k(k_) {
    if (!(k >= 0.0 && k <= 1.0))
        throw DomainError("elliptic modulus must satisfy 0 <= k <= 1");
}

double agm(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw DomainError("agm requires positive arguments");
    while (std::abs(a - b) > 1e-15 * a) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return 0.5 * (a + b);
}

double ellip_K(EllipticModulus k) {
    if (k.k == 1.0) throw DomainError("K(k) diverges at k = 1");
    double kp = std::sqrt((1.0 - k.k) * (1.0 + k.k));
    return std::numbers::pi / (2.0 * agm(1.0, kp));
}

JacobiTriple jacobi_sn_cn_dn(double u, EllipticModulus mod) {
    const double k = mod.k;
    if (k == 0.0) return {std::sin(u), std::cos(u), 1.0};
    if (k == 1.0) {
        double t = std::tanh(u);
        double s = 1.0 / std::cosh(u);
        return {t, s, s};
    }

    // AGM sequence a_n, b_n, c_n, then backward Gauss transformation of the
    // amplitude: phi_{n-1} = (phi_n + asin(c_n/a_n sin(phi_n))) / 2.
    constexpr int max_n = 32;
    std::array<double, max_n> a{}, c{};
    double an = 1.0, bn = std::sqrt((1.0 - k) * (1.0 + k)), cn = k;
    int n = 0;
    while (std::abs(cn) > 1e-16 * an && n < max_n - 1) {
        a[n] = an;
        c[n] = cn;
        double t = 0.5 * (an + bn);
        cn = 0.5 * (an - bn);
        bn = std::sqrt(an * bn);
        an = t;
        ++n;
    }
    a[n] = an;
    c[n] = cn;

    double phi = std::ldexp(1.0, n) * an * u;
    for (int i = n; i >= 1; --i) {
        double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
        phi = 0.5 * (phi + std::asin(s));
    }

    double sn = std::sin(phi);
    double cnv = std::cos(phi);
    // dn >= k' > 0 for real u; the radicand identity keeps dn^2 + k^2 sn^2 = 1
    // exact in floating point.
    double dn = std::sqrt(std::max(0.0, 1.0 - k * k * sn * sn));
    return {sn, cnv, dn};
}

}  // namespace cylint
