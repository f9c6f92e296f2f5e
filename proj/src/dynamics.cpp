#include "cylint/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "cylint/errors.hpp"

namespace cylint {

CylPhase phase_from_vec(const PhaseVec& y) {
    return {CylPoint(y[0], y[1], y[2]), y[3], y[4], y[5]};
}

PhaseVec vec_from_phase(const CylPhase& ph) {
    PhaseVec y;
    y << ph.point.r, ph.point.phi, ph.point.z, ph.p_r, ph.p_phi, ph.p_z;
    return y;
}

PhaseVec eom(const SystemInstance& sys, const PhaseVec& y) {
    CylPoint at(y[0], y[1], y[2]);
    require_radius(at.r);
    double r = at.r, r2 = r * r;
    Eigen::Vector3d a = sys.A(at);
    Eigen::Matrix3d J = sys.jacA(at);
    Eigen::Vector3d gW = sys.gradW(at);
    Eigen::Vector3d pA{y[3] + a[0], y[4] + a[1], y[5] + a[2]};

    PhaseVec dy;
    dy[0] = pA[0];
    dy[1] = pA[1] / r2;
    dy[2] = pA[2];
    // dH/dq has the chain-rule terms through A plus the explicit r-dependence
    // of the kinetic term and the potential gradient.
    for (int q = 0; q < 3; ++q)
        dy[3 + q] = -(pA[0] * J(0, q) + pA[1] / r2 * J(1, q) + pA[2] * J(2, q) + gW[q]);
    dy[3] += pA[1] * pA[1] / (r2 * r);
    return dy;
}

namespace {

PhaseVec step_rk4(const SystemInstance& sys, const PhaseVec& y, double dt) {
    PhaseVec k1 = eom(sys, y);
    PhaseVec k2 = eom(sys, y + 0.5 * dt * k1);
    PhaseVec k3 = eom(sys, y + 0.5 * dt * k2);
    PhaseVec k4 = eom(sys, y + dt * k3);
    return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

PhaseVec step_midpoint(const SystemInstance& sys, const PhaseVec& y, double dt,
                       const IntegratorConfig& cfg) {
    // Solve z = y + (dt/2) f(z) by fixed-point iteration; y_next = 2z - y.
    PhaseVec z = y + 0.5 * dt * eom(sys, y);
    for (int it = 0; it < cfg.fp_max_iters; ++it) {
        PhaseVec zn = y + 0.5 * dt * eom(sys, z);
        double delta = (zn - z).cwiseAbs().maxCoeff();
        z = zn;
        if (delta <= cfg.fp_tol) return 2.0 * z - y;
    }
    throw ConvergenceError("implicit midpoint fixed point did not converge");
}

}  // namespace

PhaseVec step(const SystemInstance& sys, const PhaseVec& y, double dt,
              const IntegratorConfig& cfg) {
    if (cfg.scheme == Scheme::RK4) return step_rk4(sys, y, dt);
    return step_midpoint(sys, y, dt, cfg);
}

Trajectory integrate(const SystemInstance& sys, const CylPhase& initial, double t_end,
                     const IntegratorConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw ValidationError("integrator dt must be positive");
    if (!(t_end > 0.0)) throw ValidationError("t_end must be positive");

    Trajectory traj;
    bool want_lin = static_cast<bool>(sys.x1_lin) || static_cast<bool>(sys.x2_lin);

    auto record = [&](double t, const PhaseVec& y) {
        CylPhase ph = phase_from_vec(y);
        traj.times.push_back(t);
        traj.states.push_back(ph);
        traj.H.push_back(integral_value(sys, Observable::H, ph));
        traj.X1.push_back(integral_value(sys, Observable::X1, ph));
        traj.X2.push_back(integral_value(sys, Observable::X2, ph));
        if (want_lin) {
            traj.X1_lin.push_back(sys.x1_lin ? sys.x1_lin(ph) : 0.0);
            traj.X2_lin.push_back(sys.x2_lin ? sys.x2_lin(ph) : 0.0);
        }
    };

    PhaseVec y = vec_from_phase(initial);
    record(0.0, y);
    long n = std::lround(std::ceil(t_end / cfg.dt - 1e-9));
    for (long i = 0; i < n; ++i) {
        PhaseVec yn;
        try {
            yn = step(sys, y, cfg.dt, cfg);
        } catch (const DomainError&) {
            traj.truncated = true;
            break;
        }
        if (yn[0] < r_min()) {
            traj.truncated = true;
            break;
        }
        y = yn;
        record((i + 1) * cfg.dt, y);
    }
    return traj;
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    bool lin = !traj.X1_lin.empty();
    os << "t,r,phi,Z,p_r,p_phi,p_Z,H,X1,X2";
    if (lin) os << ",X1_lin,X2_lin";
    os << "\n";
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const CylPhase& ph = traj.states[i];
        os << format_full(traj.times[i]) << ',' << format_full(ph.point.r) << ','
           << format_full(ph.point.phi) << ',' << format_full(ph.point.z) << ','
           << format_full(ph.p_r) << ',' << format_full(ph.p_phi) << ','
           << format_full(ph.p_z) << ',' << format_full(traj.H[i]) << ','
           << format_full(traj.X1[i]) << ',' << format_full(traj.X2[i]);
        if (lin) os << ',' << format_full(traj.X1_lin[i]) << ',' << format_full(traj.X2_lin[i]);
        os << "\n";
    }
}

}  // namespace cylint
