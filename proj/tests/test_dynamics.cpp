#include <cmath>
#include <sstream>

#include "cylint/dynamics.hpp"
#include "doctest.h"

using namespace cylint;
namespace {

SystemInstance free_particle() { return build_f6(F6Params{}); }

SystemInstance sample_f4() {
    F4Params p;
    p.mu = fn_exp2(0.3, 0.3, 1);
    p.rho = fn_poly(0, 0, 0.4);
    p.W1 = fn_poly(0, 0, 0.2);
    p.W3 = fn_poly(0, 0, 0.3);
    return build_f4(p);
}

SystemInstance sample_f1() {
    F1Params p;
    p.rho = fn_poly(0, 0, 0.3);
    p.sigma = fn_poly(0, 0.2, 0);
    p.W1 = fn_poly(0, 0, 0.25);
    p.tau0 = 0.5;
    p.mu0 = 1.0;
    return build_f1(p);
}

const CylPhase kInitial{CylPoint(1.0, 0.5, 0.1), 0.2, 0.8, 0.3};

}  // namespace

TEST_CASE("equations of motion of the free particle") {
    SystemInstance sys = free_particle();
    PhaseVec y;
    y << 1.5, 0.4, 0.2, 1.0, 2.0, 3.0;
    PhaseVec dy = eom(sys, y);
    double r = y[0], pphi = y[4];
    CHECK(dy[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dy[1] == doctest::Approx(pphi / (r * r)).epsilon(1e-14));
    CHECK(dy[2] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(dy[3] == doctest::Approx(pphi * pphi / (r * r * r)).epsilon(1e-14));
    CHECK(dy[4] == doctest::Approx(0.0).scale(1).epsilon(1e-14));
    CHECK(dy[5] == doctest::Approx(0.0).scale(1).epsilon(1e-14));
}

TEST_CASE("free radial motion is a straight line") {
    SystemInstance sys = free_particle();
    IntegratorConfig cfg;
    Trajectory traj = integrate(sys, {CylPoint(1.0, 0.0, 0.0), 1.0, 0.0, 0.0}, 1.0, cfg);
    CHECK(!traj.truncated);
    for (size_t i = 0; i < traj.times.size(); ++i)
        CHECK(std::abs(traj.states[i].point.r - (1.0 + traj.times[i])) <= 1e-10);
}

TEST_CASE("inward free motion is truncated at the axis guard") {
    SystemInstance sys = free_particle();
    IntegratorConfig cfg;
    Trajectory traj = integrate(sys, {CylPoint(1.0, 0.0, 0.0), -2.0, 0.0, 0.0}, 1.0, cfg);
    CHECK(traj.truncated);
    CHECK(traj.times.back() < 1.0);
}

TEST_CASE("integrators agree at short horizon") {
    SystemInstance sys = sample_f4();
    IntegratorConfig mid, rk4;
    rk4.scheme = Scheme::RK4;
    Trajectory a = integrate(sys, kInitial, 1.0, mid);
    Trajectory b = integrate(sys, kInitial, 1.0, rk4);
    REQUIRE(a.times.size() == b.times.size());
    PhaseVec diff = vec_from_phase(a.states.back()) - vec_from_phase(b.states.back());
    CHECK(diff.cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("midpoint keeps the energy better than RK4 at long horizon") {
    SystemInstance sys = sample_f4();
    auto h_drift = [&](const Trajectory& t) {
        double worst = 0.0;
        for (double h : t.H) worst = std::max(worst, std::abs(h - t.H.front()));
        return worst;
    };
    // At the working step the midpoint energy error is bounded and small.
    IntegratorConfig fine;
    CHECK(h_drift(integrate(sys, kInitial, 20.0, fine)) <= 1e-8);
    // At a coarse step over a long horizon the secular RK4 energy error
    // overtakes the bounded midpoint one.
    IntegratorConfig mid, rk4;
    rk4.scheme = Scheme::RK4;
    mid.dt = rk4.dt = 0.1;
    double mid_drift = h_drift(integrate(sys, kInitial, 2000.0, mid));
    double rk4_drift = h_drift(integrate(sys, kInitial, 2000.0, rk4));
    CHECK(rk4_drift > mid_drift);
    CHECK(mid_drift <= 1e-4);
}

TEST_CASE("implicit midpoint is time-reversible") {
    SystemInstance sys = sample_f1();
    IntegratorConfig cfg;
    PhaseVec y = vec_from_phase(kInitial);
    PhaseVec z = y;
    const int n = 1000;
    for (int i = 0; i < n; ++i) z = step(sys, z, cfg.dt, cfg);
    for (int i = 0; i < n; ++i) z = step(sys, z, -cfg.dt, cfg);
    CHECK((z - y).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("recorded observables include the first-order reductions") {
    SystemInstance sys = sample_f1();
    IntegratorConfig cfg;
    Trajectory traj = integrate(sys, kInitial, 2.0, cfg);
    REQUIRE(!traj.X1_lin.empty());
    REQUIRE(!traj.X2_lin.empty());
    for (double v : traj.X1_lin)
        CHECK(std::abs(v - traj.X1_lin.front()) <= 1e-8);
    for (double v : traj.X2_lin)
        CHECK(std::abs(v - traj.X2_lin.front()) <= 1e-8);
}

TEST_CASE("phase vector round trip") {
    CylPhase ph{CylPoint(1.3, 0.8, -0.6), 0.1, -0.4, 0.9};
    PhaseVec y = vec_from_phase(ph);
    CylPhase back = phase_from_vec(y);
    CHECK(back.point.r == ph.point.r);
    CHECK(back.point.phi == ph.point.phi);
    CHECK(back.p_phi == ph.p_phi);
}

TEST_CASE("trajectory CSV schema") {
    SystemInstance sys = sample_f1();
    IntegratorConfig cfg;
    Trajectory traj = integrate(sys, kInitial, 0.01, cfg);
    std::ostringstream os;
    write_trajectory_csv(traj, os);
    std::istringstream in(os.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,r,phi,Z,p_r,p_phi,p_Z,H,X1,X2,X1_lin,X2_lin");
    size_t rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == traj.times.size());
}

TEST_CASE("full-precision formatting round-trips doubles") {
    for (double v : {1.0 / 3.0, 2.718281828459045, -1.2345678901234567e-12, 0.1}) {
        std::string s = format_full(v);
        CHECK(std::stod(s) == v);
    }
}
