#include "cylint/catalog.hpp"

#include <cmath>
#include <sstream>

#include "cylint/errors.hpp"
#include "cylint/specialfn.hpp"

namespace cylint {

Eigen::Vector3d SystemInstance::covariant_momentum(const CylPhase& ph) const {
    Eigen::Vector3d a = A(ph.point);
    return {ph.p_r + a[0], ph.p_phi + a[1], ph.p_z + a[2]};
}

double integral_value(const SystemInstance& sys, Observable which, const CylPhase& ph) {
    Eigen::Vector3d pA = sys.covariant_momentum(ph);
    switch (which) {
        case Observable::X1:
            return pA[1] * pA[1] + sys.s1(ph.point).dot(pA) + sys.m1(ph.point);
        case Observable::X2:
            return pA[2] * pA[2] + sys.s2(ph.point).dot(pA) + sys.m2(ph.point);
        default: {
            double r = ph.point.r;
            return 0.5 * (pA[0] * pA[0] + pA[1] * pA[1] / (r * r) + pA[2] * pA[2]) +
                   sys.W(ph.point);
        }
    }
}

LinearIntegrals first_order_integrals(const SystemInstance& sys) {
    if (!sys.x1_lin && !sys.x2_lin)
        throw UnsupportedError("family " + sys.family_id +
                               " admits no first-order reduction of its integrals");
    return {sys.x1_lin, sys.x2_lin};
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool sampled_nonzero(const Function1D& f, double lo, double hi, int n,
                     bool derivative = false) {
    for (int i = 0; i <= n; ++i) {
        double x = lo + (hi - lo) * i / n;
        double v = derivative ? f.d1(x) : f.eval(x);
        if (std::abs(v) > 1e-12) return true;
    }
    return false;
}

// Composite Simpson rule with an even number of panels.
double simpson(const std::function<double(double)>& f, double a, double b, int n = 256) {
    double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

void attach_aux_evaluators(SystemInstance& sys) {
    AuxQuintuple aux = sys.aux;
    sys.B = [aux](const CylPoint& at) { return b_field_from_aux(aux, at); };
    sys.s1 = [aux](const CylPoint& at) { return s_coeffs_from_aux(aux, at).first; };
    sys.s2 = [aux](const CylPoint& at) { return s_coeffs_from_aux(aux, at).second; };
}

void common_validate(const SystemInstance& sys) {
    validate_periodicity(sys.aux);
    validate_rank(sys.aux);
}

}  // namespace

void validate_rank(const AuxQuintuple& aux) {
    bool psi_var = sampled_nonzero(aux.psi, 0.0, kTwoPi, 24, /*derivative=*/true);
    bool mu_nz = sampled_nonzero(aux.mu, -1.0, 1.0, 16);
    bool sigma_nz = sampled_nonzero(aux.sigma, 0.5, 2.0, 16);
    if (psi_var && mu_nz && sigma_nz)
        throw Rank3Error(
            "psi'(phi), mu(Z) and sigma(r) are simultaneously nonzero: the coefficient "
            "matrix has rank 3 and no such system exists");
}

// ---------------------------------------------------------------------------
// F1: uniform-axial.  psi = 0, tau = tau0, mu = mu0; rho, sigma, W1 free.

SystemInstance build_f1(const F1Params& p) {
    SystemInstance sys;
    sys.family_id = "F1";
    sys.params = {{"tau0", p.tau0}, {"mu0", p.mu0}};
    sys.aux = {p.rho, p.sigma, fn_const(p.tau0), fn_zero(), fn_const(p.mu0)};
    common_validate(sys);
    attach_aux_evaluators(sys);

    Function1D rho = p.rho, sigma = p.sigma, W1 = p.W1;
    double tau0 = p.tau0, mu0 = p.mu0;

    sys.W = [W1](const CylPoint& at) {
        require_radius(at.r);
        return W1(at.r);
    };
    sys.gradW = [W1](const CylPoint& at) {
        return Eigen::Vector3d{W1.d1(at.r), 0.0, 0.0};
    };
    sys.A = [rho, sigma, tau0, mu0](const CylPoint& at) {
        require_radius(at.r);
        double r = at.r;
        return Eigen::Vector3d{0.0, 0.5 * mu0 * r * r - 0.5 * rho(r),
                               0.5 * tau0 / (r * r) - 0.5 * sigma(r)};
    };
    sys.jacA = [rho, sigma, tau0, mu0](const CylPoint& at) {
        double r = at.r;
        Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
        J(1, 0) = mu0 * r - 0.5 * rho.d1(r);
        J(2, 0) = -tau0 / (r * r * r) - 0.5 * sigma.d1(r);
        return J;
    };
    sys.m1 = [rho, sigma, tau0, mu0](const CylPoint& at) {
        double r = at.r, r2 = at.r * at.r;
        double rh = rho(r), sg = sigma(r);
        return 0.25 * (rh * rh + mu0 * mu0 * r2 * r2) - 0.5 * mu0 * r2 * rh +
               0.5 * tau0 * sg - 0.5 * tau0 * tau0 / r2;
    };
    sys.m2 = [rho, sigma, tau0, mu0](const CylPoint& at) {
        double r2 = at.r * at.r;
        double rh = rho(at.r), sg = sigma(at.r);
        return 0.25 * (sg * sg + tau0 * tau0 / (r2 * r2)) - 0.5 * tau0 * sg / r2 +
               0.5 * mu0 * rh - 0.5 * mu0 * mu0 * r2;
    };

    auto A = sys.A;
    sys.x1_lin = [A, rho, mu0](const CylPhase& ph) {
        double r = ph.point.r;
        return ph.p_phi + A(ph.point)[1] + 0.5 * rho(r) - 0.5 * mu0 * r * r;
    };
    sys.x2_lin = [A, sigma, tau0](const CylPhase& ph) {
        double r = ph.point.r;
        return ph.p_z + A(ph.point)[2] + 0.5 * sigma(r) - 0.5 * tau0 / (r * r);
    };
    return sys;
}

// ---------------------------------------------------------------------------
// F2: exotic-beta.  psi = beta = sqrt(gamma), rho = mu = 0,
// tau = tau0 + tau1/gamma, sigma = tau0/r^2 + sigma0.

namespace {

Function1D gamma_closed(double f1, double beta1, double phi0) {
    double disc = 64.0 * beta1 + f1 * f1;
    if (disc <= 0.0)
        throw ValidationError("closed gamma profile needs 64*beta1 + f1^2 > 0");
    double g = std::sqrt(disc);
    return {
        [g, f1, phi0](double x) { return (g * std::sin(2.0 * (x - phi0)) - f1) / 8.0; },
        [g, phi0](double x) { return 0.25 * g * std::cos(2.0 * (x - phi0)); },
        [g, phi0](double x) { return -0.5 * g * std::sin(2.0 * (x - phi0)); },
        [g, phi0](double x) { return -g * std::cos(2.0 * (x - phi0)); },
    };
}

// beta = sqrt(gamma) with the second and third derivative taken from the
// gamma first integral, so they stay exact on the solution manifold.
Function1D beta_from_gamma(const Function1D& gam, double beta1, double beta2) {
    auto value = [gam](double x) {
        double g = gam(x);
        if (!(g > 0.0)) throw PositivityLoss("gamma(phi) is not positive");
        return std::sqrt(g);
    };
    return {
        value,
        [gam, value](double x) { return gam.d1(x) / (2.0 * value(x)); },
        [gam, value, beta1, beta2](double x) {
            double g = gam(x);
            return -(2.0 * beta1 * g + 2.0 * g * g * g + beta2) /
                   (2.0 * g * g * value(x));
        },
        [gam, value, beta1, beta2](double x) {
            double g = gam(x);
            return gam.d1(x) * (6.0 * beta1 * g + 5.0 * beta2) /
                   (4.0 * value(x) * g * g * g);
        },
    };
}

Function1D tau_from_gamma(const Function1D& gam, double tau0, double tau1) {
    return {
        [gam, tau0, tau1](double x) { return tau0 + tau1 / gam(x); },
        [gam, tau1](double x) {
            double g = gam(x);
            return -tau1 * gam.d1(x) / (g * g);
        },
        [gam, tau1](double x) {
            double g = gam(x), dg = gam.d1(x);
            return -tau1 * (gam.d2(x) * g - 2.0 * dg * dg) / (g * g * g);
        },
        [gam, tau1](double x) {
            double g = gam(x), dg = gam.d1(x), d2g = gam.d2(x);
            return -tau1 * (gam.d3(x) * g * g - 6.0 * g * dg * d2g + 6.0 * dg * dg * dg) /
                   (g * g * g * g);
        },
    };
}

Function1D sigma_inverse_square(double tau0, double sigma0) {
    return {
        [tau0, sigma0](double r) { return tau0 / (r * r) + sigma0; },
        [tau0](double r) { return -2.0 * tau0 / (r * r * r); },
        [tau0](double r) { return 6.0 * tau0 / (r * r * r * r); },
        [tau0](double r) { return -24.0 * tau0 / (r * r * r * r * r); },
    };
}

}  // namespace

SystemInstance build_f2(const F2Params& p) {
    Function1D gam;
    if (p.profile == "closed") {
        if (!(p.f1 < 0.0))
            throw ValidationError("closed gamma profile requires f1 < 0");
        if (!(p.beta1 > p.f1 / 8.0 && p.beta1 < 0.0))
            throw ValidationError("closed gamma profile requires f1/8 < beta1 < 0");
        if (p.beta2 != 0.0)
            throw ValidationError("closed gamma profile requires beta2 = 0");
        gam = gamma_closed(p.f1, p.beta1, p.phi0);
    } else if (p.profile == "numeric") {
        ProfileSolution sol = solve_gamma(p.f1, p.beta1, p.beta2, p.gamma0, p.dgamma0,
                                          -0.5, 2.0 * kTwoPi + 0.5);
        if (sol.truncated)
            throw ValidationError("numeric gamma profile loses positivity inside the "
                                  "periodicity window");
        gam = sol.as_function();
    } else {
        throw ValidationError("unknown F2 profile '" + p.profile + "'");
    }

    SystemInstance sys;
    sys.family_id = "F2";
    sys.params = {{"sigma0", p.sigma0}, {"tau0", p.tau0}, {"tau1", p.tau1},
                  {"W0", p.W0},         {"f1", p.f1},     {"beta1", p.beta1},
                  {"beta2", p.beta2},   {"phi0", p.phi0}};
    sys.aux = {fn_zero(), sigma_inverse_square(p.tau0, p.sigma0),
               tau_from_gamma(gam, p.tau0, p.tau1),
               beta_from_gamma(gam, p.beta1, p.beta2), fn_zero()};
    common_validate(sys);
    attach_aux_evaluators(sys);

    double tau0 = p.tau0, tau1 = p.tau1, W0 = p.W0, beta1 = p.beta1, beta2 = p.beta2;
    double sigma0 = p.sigma0;
    double K = (4.0 * tau1 * tau1 + beta2) / 32.0;

    sys.W = [gam, W0, K](const CylPoint& at) {
        require_radius(at.r);
        double r2 = at.r * at.r, g = gam(at.phi);
        return W0 / (r2 * g) - K / (g * g * r2 * r2);
    };
    sys.gradW = [gam, W0, K](const CylPoint& at) {
        double r = at.r, r2 = r * r, g = gam(at.phi), dg = gam.d1(at.phi);
        return Eigen::Vector3d{
            -2.0 * W0 / (r2 * r * g) + 4.0 * K / (g * g * r2 * r2 * r),
            dg * (-W0 / (r2 * g * g) + 2.0 * K / (g * g * g * r2 * r2)), 0.0};
    };
    sys.A = [gam, beta1, beta2, tau1](const CylPoint& at) {
        require_radius(at.r);
        double r = at.r, g = gam(at.phi);
        double q = (2.0 * beta1 * g + beta2) / (4.0 * g * g * std::sqrt(g));
        return Eigen::Vector3d{0.0, -q / r, 0.5 * tau1 / (g * r * r)};
    };
    sys.jacA = [gam, beta1, beta2, tau1](const CylPoint& at) {
        double r = at.r, g = gam(at.phi), dg = gam.d1(at.phi);
        double sq = std::sqrt(g);
        double q = (2.0 * beta1 * g + beta2) / (4.0 * g * g * sq);
        double dq = -dg * (6.0 * beta1 * g + 5.0 * beta2) / (8.0 * g * g * g * sq);
        Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
        J(1, 0) = q / (r * r);
        J(1, 1) = -dq / r;
        J(2, 0) = -tau1 / (g * r * r * r);
        J(2, 1) = -0.5 * tau1 * dg / (g * g * r * r);
        return J;
    };
    sys.m1 = [gam, W0, tau0, tau1, beta1, beta2](const CylPoint& at) {
        double r2 = at.r * at.r, g = gam(at.phi);
        return 2.0 * W0 / g -
               (4.0 * g * tau0 * tau1 + 2.0 * beta1 * g + 4.0 * tau1 * tau1 + beta2) /
                   (8.0 * g * g * r2);
    };
    sys.m2 = [gam, tau1, sigma0](const CylPoint& at) {
        double r2 = at.r * at.r, g = gam(at.phi);
        return tau1 / (g * r2) * (0.25 * tau1 / (g * r2) - 0.5 * sigma0);
    };

    auto A = sys.A;
    sys.x2_lin = [A, gam, tau1](const CylPhase& ph) {
        double r2 = ph.point.r * ph.point.r;
        return ph.p_z + A(ph.point)[2] - 0.5 * tau1 / (gam(ph.point.phi) * r2);
    };
    return sys;
}

// ---------------------------------------------------------------------------
// F3 profiles: y'^2 = C y^3 + c1 y^2 + c2 y + c3.

namespace {

// Attach the cubic-derived second and third derivatives to a profile whose
// value and first derivative are known in closed form.
MTProfile cubic_profile(std::function<double(double)> value,
                        std::function<double(double)> d1, double C, double c1,
                        double c2, double c3) {
    MTProfile pr;
    pr.C = C;
    pr.c1 = c1;
    pr.c2 = c2;
    pr.c3 = c3;
    pr.f.eval = value;
    pr.f.d1 = d1;
    pr.f.d2 = [value, C, c1, c2](double x) {
        double y = value(x);
        return 0.5 * (3.0 * C * y * y + 2.0 * c1 * y + c2);
    };
    pr.f.d3 = [value, d1, C, c1](double x) { return (3.0 * C * value(x) + c1) * d1(x); };
    return pr;
}

void cubic_from_roots(double C, double y1, double y2, double y3, double& c1, double& c2,
                      double& c3) {
    c1 = -C * (y1 + y2 + y3);
    c2 = C * (y1 * y2 + y1 * y3 + y2 * y3);
    c3 = -C * y1 * y2 * y3;
}

}  // namespace

MTProfile profile_const(double value, double c1) {
    MTProfile pr;
    pr.f = fn_const(value);
    pr.C = 0.0;
    pr.c1 = c1;
    pr.c2 = 0.0;
    pr.c3 = -c1 * value * value;
    pr.constant = true;
    return pr;
}

MTProfile profile_jacobi_ex1(double M1, double M2, double M3, double C) {
    if (!(C > 0.0)) throw ValidationError("jacobi-ex1 requires C > 0");
    if (!(M1 > M2 && M2 > M3))
        throw ValidationError("jacobi-ex1 requires roots M1 > M2 > M3");
    EllipticModulus k{std::sqrt((M2 - M3) / (M1 - M3))};
    double cu = 0.5 * std::sqrt(C * (M1 - M3));
    auto value = [=](double x) {
        double sn = jacobi_sn_cn_dn(cu * x, k).sn;
        return (M2 - M3) * sn * sn + M3;
    };
    auto d1 = [=](double x) {
        JacobiTriple j = jacobi_sn_cn_dn(cu * x, k);
        return 2.0 * (M2 - M3) * j.sn * j.cn * j.dn * cu;
    };
    double c1, c2, c3;
    cubic_from_roots(C, M1, M2, M3, c1, c2, c3);
    return cubic_profile(value, d1, C, c1, c2, c3);
}

MTProfile profile_jacobi_ex2(double M1, double M2, double M3, double C) {
    if (!(C > 0.0)) throw ValidationError("jacobi-ex2 requires C > 0");
    if (!(M1 > M2 && M2 > M3))
        throw ValidationError("jacobi-ex2 requires roots M1 > M2 > M3");
    EllipticModulus k{std::sqrt((M2 - M3) / (M1 - M3))};
    double cu = 0.5 * std::sqrt(C * (M1 - M3));
    auto guarded = [=](double x) {
        JacobiTriple j = jacobi_sn_cn_dn(cu * x, k);
        if (j.cn * j.cn < 1e-8)
            throw DomainError("jacobi-ex2 profile pole: sn^2(u, k) = 1");
        return j;
    };
    auto value = [=](double x) {
        JacobiTriple j = guarded(x);
        return (M1 - M2 * j.sn * j.sn) / (j.cn * j.cn);
    };
    auto d1 = [=](double x) {
        JacobiTriple j = guarded(x);
        return 2.0 * (M1 - M2) * j.sn * j.dn * cu / (j.cn * j.cn * j.cn);
    };
    double c1, c2, c3;
    cubic_from_roots(C, M1, M2, M3, c1, c2, c3);
    return cubic_profile(value, d1, C, c1, c2, c3);
}

MTProfile profile_elem_ex3(double M1, double M3, double C) {
    if (!(C > 0.0)) throw ValidationError("elementary-ex3 requires C > 0");
    if (!(M1 > M3)) throw ValidationError("elementary-ex3 requires M1 > M3");
    double cu = 0.5 * std::sqrt(C * (M1 - M3));
    auto value = [=](double x) {
        double t = std::tanh(cu * x);
        return (M1 - M3) * t * t + M3;
    };
    auto d1 = [=](double x) {
        double t = std::tanh(cu * x), s = 1.0 - t * t;
        return 2.0 * (M1 - M3) * t * s * cu;
    };
    double c1, c2, c3;
    cubic_from_roots(C, M1, M1, M3, c1, c2, c3);
    return cubic_profile(value, d1, C, c1, c2, c3);
}

MTProfile profile_elem_ex4(double M1, double M2, double C) {
    if (!(C > 0.0)) throw ValidationError("elementary-ex4 requires C > 0");
    if (!(M1 > M2)) throw ValidationError("elementary-ex4 requires M1 > M2");
    double cu = 0.5 * std::sqrt(C * (M1 - M2));
    auto guarded_cos = [=](double x) {
        double c = std::cos(cu * x);
        if (c * c < 1e-8) throw DomainError("elementary-ex4 profile pole: sin^2(u) = 1");
        return c;
    };
    auto value = [=](double x) {
        double c = guarded_cos(x), s = std::sin(cu * x);
        return (M1 - M2 * s * s) / (c * c);
    };
    auto d1 = [=](double x) {
        double c = guarded_cos(x), s = std::sin(cu * x);
        return 2.0 * (M1 - M2) * s * cu / (c * c * c);
    };
    double c1, c2, c3;
    cubic_from_roots(C, M1, M2, M2, c1, c2, c3);
    return cubic_profile(value, d1, C, c1, c2, c3);
}

MTProfile profile_exp(double k0, double k1, double k2, double k3) {
    if (k0 == 0.0) throw ValidationError("exponential profile requires k0 != 0");
    auto value = [=](double x) {
        return (k1 * std::exp(k0 * x) - k2 * std::exp(-k0 * x) + k3) / k0;
    };
    auto d1 = [=](double x) { return k1 * std::exp(k0 * x) + k2 * std::exp(-k0 * x); };
    return cubic_profile(value, d1, 0.0, k0 * k0, -2.0 * k3 * k0,
                         4.0 * k1 * k2 + k3 * k3);
}

MTProfile profile_trig(double k0, double k1, double k2, double k3) {
    if (k0 == 0.0) throw ValidationError("trigonometric profile requires k0 != 0");
    auto value = [=](double x) {
        return (k1 * std::sin(k0 * x) - k2 * std::cos(k0 * x) + k3) / k0;
    };
    auto d1 = [=](double x) { return k1 * std::cos(k0 * x) + k2 * std::sin(k0 * x); };
    return cubic_profile(value, d1, 0.0, -k0 * k0, 2.0 * k3 * k0,
                         k1 * k1 + k2 * k2 - k3 * k3);
}

MTProfile profile_numeric(const ProfileSolution& sol, double C, double c1, double c2,
                          double c3) {
    MTProfile pr;
    pr.f = sol.as_function();
    pr.C = C;
    pr.c1 = c1;
    pr.c2 = c2;
    pr.c3 = c3;
    return pr;
}

// ---------------------------------------------------------------------------
// F3: elliptic-MT.  mu = M'(Z), tau = T'(phi), psi = rho = sigma = 0.

namespace {

// Derivative of a cubic-first-integral profile, as a Function1D of its own.
Function1D profile_derivative(const MTProfile& p) {
    Function1D f = p.f;
    double C = p.C, c1 = p.c1;
    return {
        f.d1, f.d2, f.d3,
        [f, C, c1](double x) {
            double d = f.d1(x);
            return 3.0 * C * d * d + (3.0 * C * f(x) + c1) * f.d2(x);
        },
    };
}

}  // namespace

SystemInstance build_f3(const F3Params& p) {
    if (!p.M.constant && !p.T.constant && std::abs(p.M.C - p.T.C) > 1e-12)
        throw ValidationError(
            "elliptic family: the M and T profiles must share the leading cubic "
            "coefficient C");

    SystemInstance sys;
    sys.family_id = "F3";
    sys.params = {{"w0", p.w0}, {"C", p.M.constant ? p.T.C : p.M.C}};
    sys.aux = {fn_zero(), fn_zero(), profile_derivative(p.T), fn_zero(),
               profile_derivative(p.M)};
    common_validate(sys);
    attach_aux_evaluators(sys);

    Function1D M = p.M.f, T = p.T.f, W1 = p.W1;
    double w0 = p.w0;
    // Each separated piece of the potential carries the quadratic coefficient
    // of the *other* profile's cubic first integral.
    double aphi = p.swap_coupling ? p.T.c1 : p.M.c1;  // multiplies T^2 in W2(phi)
    double az = p.swap_coupling ? p.M.c1 : p.T.c1;    // multiplies M^2 in W3(Z)

    auto W2 = [T, aphi, w0](double phi) {
        double t = T(phi);
        return -aphi * t * t / 8.0 + w0 * t;
    };
    auto dW2 = [T, aphi, w0](double phi) {
        return (-0.25 * aphi * T(phi) + w0) * T.d1(phi);
    };
    auto W3 = [M, az, w0](double z) {
        double m = M(z);
        return -az * m * m / 8.0 + w0 * m;
    };
    auto dW3 = [M, az, w0](double z) { return (-0.25 * az * M(z) + w0) * M.d1(z); };

    sys.W = [M, T, W1, W2, W3](const CylPoint& at) {
        require_radius(at.r);
        double r = at.r, r2 = r * r;
        double m = M(at.z), dm = M.d1(at.z), d2m = M.d2(at.z);
        double t = T(at.phi), dt = T.d1(at.phi), d2t = T.d2(at.phi);
        return -d2t * m / (4.0 * r2) - t * d2m / 4.0 - r2 * dm * dm / 8.0 -
               dt * dt / (8.0 * r2 * r2) + W1(r) + W2(at.phi) / r2 + W3(at.z);
    };
    sys.gradW = [M, T, W1, W2, dW2, dW3](const CylPoint& at) {
        double r = at.r, r2 = r * r, r3 = r2 * r, r5 = r3 * r2;
        double m = M(at.z), dm = M.d1(at.z), d2m = M.d2(at.z), d3m = M.d3(at.z);
        double t = T(at.phi), dt = T.d1(at.phi), d2t = T.d2(at.phi), d3t = T.d3(at.phi);
        double Wr = d2t * m / (2.0 * r3) - r * dm * dm / 4.0 + dt * dt / (2.0 * r5) +
                    W1.d1(r) - 2.0 * W2(at.phi) / r3;
        double Wp = -d3t * m / (4.0 * r2) - dt * d2m / 4.0 - dt * d2t / (4.0 * r2 * r2) +
                    dW2(at.phi) / r2;
        double Wz = -d2t * dm / (4.0 * r2) - t * d3m / 4.0 - r2 * dm * d2m / 4.0 +
                    dW3(at.z);
        return Eigen::Vector3d{Wr, Wp, Wz};
    };
    sys.A = [M, T](const CylPoint& at) {
        require_radius(at.r);
        double r = at.r;
        return Eigen::Vector3d{0.0, 0.5 * r * r * M.d1(at.z),
                               0.5 * T.d1(at.phi) / (r * r)};
    };
    sys.jacA = [M, T](const CylPoint& at) {
        double r = at.r;
        Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
        J(1, 0) = r * M.d1(at.z);
        J(1, 2) = 0.5 * r * r * M.d2(at.z);
        J(2, 0) = -T.d1(at.phi) / (r * r * r);
        J(2, 1) = 0.5 * T.d2(at.phi) / (r * r);
        return J;
    };
    sys.m1 = [M, T, W2](const CylPoint& at) {
        double r2 = at.r * at.r;
        double dm = M.d1(at.z), dt = T.d1(at.phi);
        return 0.25 * r2 * r2 * dm * dm - 0.5 * dt * dt / r2 -
               0.5 * M(at.z) * T.d2(at.phi) + 2.0 * W2(at.phi);
    };
    sys.m2 = [M, T, W3](const CylPoint& at) {
        double r2 = at.r * at.r;
        double dm = M.d1(at.z), dt = T.d1(at.phi);
        return -0.5 * r2 * dm * dm + 0.25 * dt * dt / (r2 * r2) -
               0.5 * M.d2(at.z) * T(at.phi) + 2.0 * W3(at.z);
    };
    return sys;
}

// ---------------------------------------------------------------------------
// F4: axial-mu-rho.  mu(Z), rho(r); sigma = tau = psi = 0.

SystemInstance build_f4(const F4Params& p) {
    SystemInstance sys;
    sys.family_id = "F4";
    sys.aux = {p.rho, fn_zero(), fn_zero(), fn_zero(), p.mu};
    common_validate(sys);
    attach_aux_evaluators(sys);

    Function1D mu = p.mu, rho = p.rho, W1 = p.W1, W3 = p.W3;

    sys.W = [mu, rho, W1, W3](const CylPoint& at) {
        require_radius(at.r);
        double r = at.r, m = mu(at.z);
        return W1(r) - r * r * m * m / 8.0 + rho(r) * m / 4.0 + W3(at.z);
    };
    sys.gradW = [mu, rho, W1, W3](const CylPoint& at) {
        double r = at.r, m = mu(at.z), dm = mu.d1(at.z);
        return Eigen::Vector3d{W1.d1(r) - 0.25 * r * m * m + 0.25 * rho.d1(r) * m, 0.0,
                               -0.25 * r * r * m * dm + 0.25 * rho(r) * dm + W3.d1(at.z)};
    };
    sys.A = [mu, rho](const CylPoint& at) {
        require_radius(at.r);
        double r = at.r;
        return Eigen::Vector3d{0.0, 0.5 * r * r * mu(at.z) - 0.5 * rho(r), 0.0};
    };
    sys.jacA = [mu, rho](const CylPoint& at) {
        double r = at.r;
        Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
        J(1, 0) = r * mu(at.z) - 0.5 * rho.d1(r);
        J(1, 2) = 0.5 * r * r * mu.d1(at.z);
        return J;
    };
    sys.m1 = [mu, rho](const CylPoint& at) {
        double d = rho(at.r) - at.r * at.r * mu(at.z);
        return 0.25 * d * d;
    };
    sys.m2 = [mu, rho, W3](const CylPoint& at) {
        double m = mu(at.z);
        return -0.5 * at.r * at.r * m * m + 0.5 * rho(at.r) * m + 2.0 * W3(at.z);
    };

    auto A = sys.A;
    sys.x1_lin = [A, mu, rho](const CylPhase& ph) {
        double r = ph.point.r;
        return ph.p_phi + A(ph.point)[1] +
               0.5 * (rho(r) - r * r * mu(ph.point.z));
    };
    return sys;
}

// ---------------------------------------------------------------------------
// F5: tau-sigma.  tau(phi), sigma(r); rho = psi = mu = 0.

SystemInstance build_f5(const F5Params& p) {
    SystemInstance sys;
    sys.family_id = "F5";
    sys.aux = {fn_zero(), p.sigma, p.tau, fn_zero(), fn_zero()};
    common_validate(sys);
    attach_aux_evaluators(sys);

    Function1D tau = p.tau, sigma = p.sigma, W1 = p.W1, W2 = p.W2;

    sys.W = [tau, sigma, W1, W2](const CylPoint& at) {
        require_radius(at.r);
        double r2 = at.r * at.r, t = tau(at.phi);
        return W1(at.r) - t * t / (8.0 * r2 * r2) + t * sigma(at.r) / (4.0 * r2) +
               W2(at.phi) / r2;
    };
    sys.gradW = [tau, sigma, W1, W2](const CylPoint& at) {
        double r = at.r, r2 = r * r, r3 = r2 * r, r5 = r3 * r2;
        double t = tau(at.phi), dt = tau.d1(at.phi), sg = sigma(r);
        double Wr = W1.d1(r) + t * t / (2.0 * r5) + 0.25 * t * sigma.d1(r) / r2 -
                    0.5 * t * sg / r3 - 2.0 * W2(at.phi) / r3;
        double Wp = -0.25 * t * dt / (r2 * r2) + 0.25 * dt * sg / r2 + W2.d1(at.phi) / r2;
        return Eigen::Vector3d{Wr, Wp, 0.0};
    };
    sys.A = [tau, sigma](const CylPoint& at) {
        require_radius(at.r);
        double r = at.r;
        return Eigen::Vector3d{0.0, 0.0, 0.5 * tau(at.phi) / (r * r) - 0.5 * sigma(r)};
    };
    sys.jacA = [tau, sigma](const CylPoint& at) {
        double r = at.r;
        Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
        J(2, 0) = -tau(at.phi) / (r * r * r) - 0.5 * sigma.d1(r);
        J(2, 1) = 0.5 * tau.d1(at.phi) / (r * r);
        return J;
    };
    sys.m1 = [tau, sigma, W2](const CylPoint& at) {
        double t = tau(at.phi);
        return 0.5 * t * (sigma(at.r) - t / (at.r * at.r)) + 2.0 * W2(at.phi);
    };
    sys.m2 = [tau, sigma](const CylPoint& at) {
        double d = sigma(at.r) - tau(at.phi) / (at.r * at.r);
        return 0.25 * d * d;
    };

    auto A = sys.A;
    sys.x2_lin = [A, tau, sigma](const CylPhase& ph) {
        double r = ph.point.r;
        return ph.p_z + A(ph.point)[2] +
               0.5 * (sigma(r) - tau(ph.point.phi) / (r * r));
    };
    return sys;
}

// ---------------------------------------------------------------------------
// F6: polar-x-free.  rho(r) only.

SystemInstance build_f6(const F6Params& p) {
    SystemInstance sys;
    sys.family_id = "F6";
    sys.aux = {p.rho, fn_zero(), fn_zero(), fn_zero(), fn_zero()};
    common_validate(sys);
    attach_aux_evaluators(sys);

    Function1D rho = p.rho, W1 = p.W1, W3 = p.W3;

    sys.W = [W1, W3](const CylPoint& at) {
        require_radius(at.r);
        return W1(at.r) + W3(at.z);
    };
    sys.gradW = [W1, W3](const CylPoint& at) {
        return Eigen::Vector3d{W1.d1(at.r), 0.0, W3.d1(at.z)};
    };
    sys.A = [rho](const CylPoint& at) {
        require_radius(at.r);
        return Eigen::Vector3d{0.0, -0.5 * rho(at.r), 0.0};
    };
    sys.jacA = [rho](const CylPoint& at) {
        Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
        J(1, 0) = -0.5 * rho.d1(at.r);
        return J;
    };
    sys.m1 = [rho](const CylPoint& at) {
        double v = rho(at.r);
        return 0.25 * v * v;
    };
    sys.m2 = [W3](const CylPoint& at) { return 2.0 * W3(at.z); };
    return sys;
}

// ---------------------------------------------------------------------------
// F7: sigma-only.  sigma(r) only.

SystemInstance build_f7(const F7Params& p) {
    SystemInstance sys;
    sys.family_id = "F7";
    sys.aux = {fn_zero(), p.sigma, fn_zero(), fn_zero(), fn_zero()};
    common_validate(sys);
    attach_aux_evaluators(sys);

    Function1D sigma = p.sigma, W1 = p.W1, W2 = p.W2;

    sys.W = [W1, W2](const CylPoint& at) {
        require_radius(at.r);
        return W1(at.r) + W2(at.phi) / (at.r * at.r);
    };
    sys.gradW = [W1, W2](const CylPoint& at) {
        double r = at.r;
        return Eigen::Vector3d{W1.d1(r) - 2.0 * W2(at.phi) / (r * r * r),
                               W2.d1(at.phi) / (r * r), 0.0};
    };
    sys.A = [sigma](const CylPoint& at) {
        require_radius(at.r);
        return Eigen::Vector3d{0.0, 0.0, -0.5 * sigma(at.r)};
    };
    sys.jacA = [sigma](const CylPoint& at) {
        Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
        J(2, 0) = -0.5 * sigma.d1(at.r);
        return J;
    };
    sys.m1 = [W2](const CylPoint& at) { return 2.0 * W2(at.phi); };
    sys.m2 = [sigma](const CylPoint& at) {
        double v = sigma(at.r);
        return 0.25 * v * v;
    };
    return sys;
}

// ---------------------------------------------------------------------------
// F8: polar-2d-constrained.  psi(phi), rho(r) and W12 supplied by the user;
// admissibility is decided by the reduced-system residual gate.

SystemInstance build_f8(const F8Params& p) {
    SystemInstance sys;
    sys.family_id = "F8";
    sys.params = {{"tau0", p.tau0}, {"sigma0", p.sigma0}};
    sys.aux = {p.rho, sigma_inverse_square(p.tau0, p.sigma0), fn_const(p.tau0), p.psi,
               fn_zero()};
    common_validate(sys);
    attach_aux_evaluators(sys);

    Function1D psi = p.psi, rho = p.rho, W1 = p.W1, W2 = p.W2;
    double sigma0 = p.sigma0;

    sys.W = [psi, W1, W2](const CylPoint& at) {
        require_radius(at.r);
        return W1(at.r) + W2(at.phi) / (at.r * at.r);
    };
    sys.gradW = [W1, W2](const CylPoint& at) {
        double r = at.r;
        return Eigen::Vector3d{W1.d1(r) - 2.0 * W2(at.phi) / (r * r * r),
                               W2.d1(at.phi) / (r * r), 0.0};
    };
    sys.A = [psi, rho, sigma0](const CylPoint& at) {
        require_radius(at.r);
        double r = at.r;
        return Eigen::Vector3d{
            0.0, -0.5 * rho(r) + 0.5 * (psi.d2(at.phi) + psi(at.phi)) / r,
            -0.5 * sigma0};
    };
    sys.jacA = [psi, rho](const CylPoint& at) {
        double r = at.r;
        Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
        J(1, 0) = -0.5 * rho.d1(r) - 0.5 * (psi.d2(at.phi) + psi(at.phi)) / (r * r);
        J(1, 1) = 0.5 * (psi.d3(at.phi) + psi.d1(at.phi)) / r;
        return J;
    };

    // m1 is recovered by quadrature of its exact differential from the anchor
    // (r, phi) = (1, 0); the gate below certifies the differential is closed.
    auto m1_r = [psi, rho](double r, double phi) {
        double ps = psi(phi), d2ps = psi.d2(phi), rh = rho(r);
        double num = (r * rh - ps) * (d2ps + r * r * rho.d1(r)) + r * rh * ps - ps * ps;
        return num / (2.0 * r * r * r);
    };
    auto m1_phi = [psi, rho, W2](double r, double phi) {
        double num = psi.d1(phi) * (-r * r * rho.d1(r) - psi(phi) - psi.d2(phi)) +
                     4.0 * r * r * W2.d1(phi);
        return num / (2.0 * r * r);
    };
    sys.m1 = [m1_r, m1_phi](const CylPoint& at) {
        require_radius(at.r);
        double radial = simpson([&](double t) { return m1_r(t, 0.0); }, 1.0, at.r);
        double angular =
            simpson([&](double t) { return m1_phi(at.r, t); }, 0.0, at.phi);
        return radial + angular;
    };
    sys.m2 = [sigma0](const CylPoint&) { return 0.25 * sigma0 * sigma0; };

    // Residual gate: the reduced determining system must hold for the supplied
    // profiles and potential.
    double worst = 0.0;
    for (double r : {0.6, 1.0, 1.5}) {
        for (double phi : {0.3, 1.7, 3.1, 4.9}) {
            ReducedResiduals rr = reduced_residuals(sys.aux, sys.W, CylPoint(r, phi, 0.0));
            worst = std::max(worst, rr.normalized.cwiseAbs().maxCoeff());
        }
    }
    if (worst > p.gate_tol) {
        std::ostringstream msg;
        msg << "reduced determining system not satisfied: max normalized residual "
            << worst << " exceeds " << p.gate_tol;
        throw ResidualGateError(msg.str());
    }
    return sys;
}

// ---------------------------------------------------------------------------

const std::vector<FamilyDescriptor>& family_catalog() {
    static const std::vector<FamilyDescriptor> cat = {
        {"F1", "uniform-axial",
         "psi = 0; rho(r), sigma(r) free, tau and mu constant. W = W1(r). Both "
         "quadratic integrals are squares of first-order ones.",
         {"rho (slot)", "sigma (slot)", "W1 (slot)", "tau0", "mu0"},
         {"none beyond slot smoothness"}},
        {"F2", "exotic-beta",
         "psi = beta = sqrt(gamma(phi)) with gamma solving a cubic-type ODE; field "
         "and potential are rational in beta and 1/r.",
         {"sigma0", "tau0", "tau1", "W0", "f1", "beta1", "beta2", "phi0",
          "profile = closed | numeric", "gamma0, dgamma0 (numeric)"},
         {"closed profile: f1 < 0, f1/8 < beta1 < 0, beta2 = 0",
          "numeric profile: initial data must satisfy the gamma first integral and "
          "stay positive over a full period"}},
        {"F3", "elliptic-MT",
         "mu = M'(Z), tau = T'(phi) with M, T solving y'^2 = C y^3 + ...; generic "
         "profiles are elliptic, degenerate ones elementary or trigonometric.",
         {"M profile: jacobi-ex1 | jacobi-ex2 | elem-ex3 | elem-ex4 | exp | const | "
          "numeric",
          "T profile: trig | jacobi (2*pi-periodic) | const | numeric", "w0",
          "W1 (slot)"},
         {"M and T must share the cubic coefficient C unless one is constant",
          "T'(phi) must be 2*pi-periodic",
          "jacobi-ex2 / elem-ex4 have excluded pole points"}},
        {"F4", "axial-mu-rho",
         "mu(Z) and rho(r) free; axially symmetric field with radial component. X1 "
         "is the square of a first-order integral.",
         {"mu (slot)", "rho (slot)", "W1 (slot)", "W3 (slot)"},
         {"none beyond slot smoothness"}},
        {"F5", "tau-sigma",
         "tau(phi) and sigma(r) free; Z-independent field with no axial component. "
         "X2 is the square of a first-order integral.",
         {"tau (slot)", "sigma (slot)", "W1 (slot)", "W2 (slot)"},
         {"tau(phi) must be 2*pi-periodic"}},
        {"F6", "polar-x-free",
         "rho(r) only: perpendicular field B_z(r) with separated potential W1(r) + "
         "W3(Z); planar polar-type system plus free-form axial motion.",
         {"rho (slot)", "W1 (slot)", "W3 (slot)"},
         {"none beyond slot smoothness"}},
        {"F7", "sigma-only",
         "sigma(r) only: purely azimuthal field with potential W1(r) + W2(phi)/r^2.",
         {"sigma (slot)", "W1 (slot)", "W2 (slot)"},
         {"none beyond slot smoothness"}},
        {"F8", "polar-2d-constrained",
         "user-supplied psi(phi), rho(r) and planar potential; accepted only when "
         "the reduced determining system holds (residual gate).",
         {"psi (slot)", "rho (slot)", "W1 (slot)", "W2 (slot)", "tau0", "sigma0"},
         {"psi must be 2*pi-periodic",
          "reduced-system residuals must stay below the gate tolerance"}},
    };
    return cat;
}

const FamilyDescriptor& describe_family(const std::string& id) {
    for (const auto& d : family_catalog())
        if (d.id == id) return d;
    throw ValidationError("unknown family id '" + id + "'");
}

}  // namespace cylint
