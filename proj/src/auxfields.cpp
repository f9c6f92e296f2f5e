#include "cylint/auxfields.hpp"

#include <algorithm>
#include <cmath>

#include "cylint/fd.hpp"

namespace cylint {

AuxQuintuple AuxQuintuple::zero() {
    return {fn_zero(), fn_zero(), fn_zero(), fn_zero(), fn_zero()};
}

void validate_periodicity(const AuxQuintuple& aux) {
    if (!is_2pi_periodic(aux.tau)) throw ValidationError("tau(phi) is not 2*pi-periodic");
    if (!is_2pi_periodic(aux.psi)) throw ValidationError("psi(phi) is not 2*pi-periodic");
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> s_coeffs_from_aux(const AuxQuintuple& aux,
                                                              const CylPoint& at) {
    require_radius(at.r);
    const double r = at.r, phi = at.phi, z = at.z;
    Eigen::Vector3d s1{aux.psi.d1(phi),
                       -aux.psi.eval(phi) / r - r * r * aux.mu.eval(z) + aux.rho.eval(r),
                       aux.tau.eval(phi)};
    Eigen::Vector3d s2{0.0, aux.mu.eval(z),
                       -aux.tau.eval(phi) / (r * r) + aux.sigma.eval(r)};
    return {s1, s2};
}

FieldTriple b_field_from_aux(const AuxQuintuple& aux, const CylPoint& at) {
    require_radius(at.r);
    const double r = at.r, phi = at.phi, z = at.z;
    const double r2 = r * r;
    FieldTriple B;
    B.B_r = -0.5 * r2 * aux.mu.d1(z) + 0.5 * aux.tau.d1(phi) / r2;
    B.B_phi = aux.tau.eval(phi) / (r2 * r) + 0.5 * aux.sigma.d1(r);
    B.B_z_cyl = -0.5 * aux.psi.eval(phi) / r2 + r * aux.mu.eval(z) -
                0.5 * aux.rho.d1(r) - 0.5 * aux.psi.d2(phi) / r2;
    return B;
}

Eigen::Matrix3d matrix_M(const AuxQuintuple& aux, const CylPoint& at) {
    require_radius(at.r);
    const double r = at.r;
    const double rho = aux.rho.eval(r), sigma = aux.sigma.eval(r);
    const double tau = aux.tau.eval(at.phi), psi = aux.psi.eval(at.phi);
    const double dpsi = aux.psi.d1(at.phi), mu = aux.mu.eval(at.z);
    const double r2 = r * r;
    const double r5 = r2 * r2 * r, r7 = r5 * r2;
    Eigen::Matrix3d M;
    M << 0.0, r2 * mu, r2 * sigma - tau,
         dpsi, rho - r2 * mu - psi / r, tau,
         0.0, 4.0 * r7 * mu, -4.0 * r5 * tau;
    return M;
}

double det_M(const AuxQuintuple& aux, const CylPoint& at) {
    require_radius(at.r);
    const double r = at.r;
    return 4.0 * std::pow(r, 9) * aux.psi.d1(at.phi) * aux.mu.eval(at.z) *
           aux.sigma.eval(r);
}

double alpha(const AuxQuintuple& aux, const CylPoint& at) {
    require_radius(at.r);
    const double r = at.r, phi = at.phi, z = at.z;
    const double rho = aux.rho.eval(r), drho = aux.rho.d1(r);
    const double sigma = aux.sigma.eval(r), dsigma = aux.sigma.d1(r);
    const double tau = aux.tau.eval(phi), dtau = aux.tau.d1(phi);
    const double psi = aux.psi.eval(phi), dpsi = aux.psi.d1(phi);
    const double mu = aux.mu.eval(z), dmu = aux.mu.d1(z);
    const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2, r5 = r4 * r;

    double term1 = -dpsi * ((-r5 * sigma + r3 * tau) * dsigma - r5 * mu * drho +
                            2.0 * tau * tau - 2.0 * r2 * sigma * tau +
                            r3 * mu * (r3 * mu + r * rho - 2.0 * psi));
    double term2 = -dtau * ((-r * rho + psi) * tau -
                            r2 * sigma * (r3 * mu - r * rho + psi));
    double term3 = -r4 * dmu * tau * (r * rho - psi);
    return term1 + term2 + term3;
}

namespace {

double max_abs(std::initializer_list<double> terms) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, std::abs(t));
    return m;
}

}  // namespace

ReducedResiduals reduced_residuals(const AuxQuintuple& aux, const ScalarField& W,
                                   const CylPoint& at) {
    const double h0 = 1e-4;
    double hr = h0 * std::max(1.0, at.r);
    if (at.r - 4.0 * hr < r_min())
        throw DomainError("reduced_residuals needs clearance above r_min for FD");

    const double r = at.r, phi = at.phi, z = at.z;
    const double rho = aux.rho.eval(r), drho = aux.rho.d1(r), d2rho = aux.rho.d2(r);
    const double sigma = aux.sigma.eval(r), dsigma = aux.sigma.d1(r),
                 d2sigma = aux.sigma.d2(r);
    const double tau = aux.tau.eval(phi), dtau = aux.tau.d1(phi), d2tau = aux.tau.d2(phi);
    const double psi = aux.psi.eval(phi), dpsi = aux.psi.d1(phi), d2psi = aux.psi.d2(phi),
                 d3psi = aux.psi.d3(phi);
    const double mu = aux.mu.eval(z), dmu = aux.mu.d1(z), d2mu = aux.mu.d2(z);
    (void)d2sigma;
    const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2, r5 = r4 * r;

    const double W_r = fd_partial(W, at, Axis::R, h0);
    const double W_phi = fd_partial(W, at, Axis::Phi, h0);
    const double W_z = fd_partial(W, at, Axis::Z, h0);
    const double W_rphi = fd_partial2(W, at, Axis::R, Axis::Phi, h0);
    const double W_phiz = fd_partial2(W, at, Axis::Phi, Axis::Z, h0);
    const double W_rz = fd_partial2(W, at, Axis::R, Axis::Z, h0);

    Eigen::Matrix<double, 8, 1> raw, norm;

    // Two conditions on the auxiliary functions alone.
    {
        double t1 = dpsi * r3 * dsigma, t2 = 2.0 * dpsi * tau, t3 = -dtau * r * rho,
               t4 = dtau * psi;
        raw[0] = t1 + t2 + t3 + t4;
        norm[0] = raw[0] / std::max(1.0, max_abs({t1, t2, t3, t4}));
    }
    {
        double t1 = mu * dpsi, t2 = r3 * sigma * dmu;
        raw[1] = t1 + t2;
        norm[1] = raw[1] / std::max(1.0, max_abs({t1, t2}));
    }

    // Mixed second derivatives of W.
    {
        double t1 = dpsi * (-3.0 * d2psi + r3 * d2rho - r3 * mu - r2 * drho + r * rho -
                            4.0 * psi);
        double t2 = dtau * (r3 * dsigma + 2.0 * tau);
        double t3 = -2.0 * r4 * tau * dmu;
        double t4 = (r * rho - psi) * d3psi;
        double t5 = -4.0 * r5 * W_rphi;
        double t6 = -8.0 * r4 * W_phi;
        raw[2] = t1 + t2 + t3 + t4 + t5 + t6;
        norm[2] = raw[2] / std::max(1.0, max_abs({t1, t2, t3, t4, t5, t6}));
    }
    {
        double t1 = r2 * (tau - r2 * sigma) * d2mu;
        double t2 = d2tau * mu;
        double t3 = 4.0 * r2 * W_phiz;
        raw[3] = t1 + t2 + t3;
        norm[3] = raw[3] / std::max(1.0, max_abs({t1, t2, t3}));
    }
    {
        double t1 = r * dmu * (-2.0 * r3 * mu + r2 * drho + psi);
        double t2 = 2.0 * mu * dtau;
        double t3 = -4.0 * r3 * W_rz;
        raw[4] = t1 + t2 + t3;
        norm[4] = raw[4] / std::max(1.0, max_abs({t1, t2, t3}));
    }

    // Rows of M . grad(W) = (0, 0, alpha).
    Eigen::Matrix3d M = matrix_M(aux, at);
    Eigen::Vector3d gradW{W_r, W_phi, W_z};
    Eigen::Vector3d rhs{0.0, 0.0, alpha(aux, at)};
    for (int i = 0; i < 3; ++i) {
        double t1 = M(i, 0) * gradW[0], t2 = M(i, 1) * gradW[1], t3 = M(i, 2) * gradW[2],
               t4 = -rhs[i];
        raw[5 + i] = t1 + t2 + t3 + t4;
        norm[5 + i] = raw[5 + i] / std::max(1.0, max_abs({t1, t2, t3, t4}));
    }

    return {raw, norm};
}

}  // namespace cylint
