#include <cmath>
#include <random>

#include "cylint/auxfields.hpp"
#include "cylint/catalog.hpp"
#include "cylint/fd.hpp"
#include "doctest.h"

using namespace cylint;

namespace {

AuxQuintuple make_aux(Function1D rho, Function1D sigma, Function1D tau,
                      Function1D psi, Function1D mu) {
    AuxQuintuple aux;
    aux.rho = std::move(rho);
    aux.sigma = std::move(sigma);
    aux.tau = std::move(tau);
    aux.psi = std::move(psi);
    aux.mu = std::move(mu);
    return aux;
}

}  // namespace

TEST_CASE("integral coefficient vectors from the quintuple") {
    AuxQuintuple zero = AuxQuintuple::zero();
    auto [z1, z2] = s_coeffs_from_aux(zero, CylPoint(1.3, 0.4, 0.2));
    CHECK(z1.norm() == 0.0);
    CHECK(z2.norm() == 0.0);

    double mu0 = 0.7, tau0 = 1.1;
    AuxQuintuple a = make_aux(fn_zero(), fn_zero(), fn_const(tau0), fn_zero(),
                              fn_const(mu0));
    auto [s1, s2] = s_coeffs_from_aux(a, CylPoint(2.0, 0.9, -0.5));
    CHECK(s1[0] == doctest::Approx(0.0).scale(1).epsilon(1e-14));
    CHECK(s1[1] == doctest::Approx(-4.0 * mu0).epsilon(1e-14));
    CHECK(s1[2] == doctest::Approx(tau0).epsilon(1e-14));
    CHECK(s2[0] == 0.0);
    CHECK(s2[1] == doctest::Approx(mu0).epsilon(1e-14));
    CHECK(s2[2] == doctest::Approx(-tau0 / 4.0).epsilon(1e-14));

    AuxQuintuple b = make_aux(fn_zero(), fn_zero(), fn_zero(), fn_trig(1, 0, 1),
                              fn_zero());
    auto [t1, t2] = s_coeffs_from_aux(b, CylPoint(1.0, 0.0, 0.0));
    CHECK(t1[0] == doctest::Approx(1.0).epsilon(1e-14));  // psi' = cos(0)
    CHECK(t1[1] == doctest::Approx(0.0).scale(1).epsilon(1e-14));
    CHECK(t1[2] == 0.0);
    CHECK(t2.norm() == 0.0);
}

TEST_CASE("magnetic field from the quintuple") {
    FieldTriple z = b_field_from_aux(AuxQuintuple::zero(), CylPoint(1.0, 1.0, 1.0));
    CHECK(z.B_r == 0.0);
    CHECK(z.B_phi == 0.0);
    CHECK(z.B_z_cyl == 0.0);

    AuxQuintuple a = make_aux(fn_zero(), fn_zero(), fn_const(8.0), fn_zero(),
                              fn_const(1.0));
    FieldTriple f = b_field_from_aux(a, CylPoint(2.0, 0.3, 0.7));
    CHECK(f.B_r == doctest::Approx(0.0).scale(1).epsilon(1e-14));
    CHECK(f.B_phi == doctest::Approx(1.0).epsilon(1e-14));  // tau/r^3
    CHECK(f.B_z_cyl == doctest::Approx(2.0).epsilon(1e-14));  // r mu

    AuxQuintuple b = make_aux(fn_poly(0, 0, 1), fn_zero(), fn_zero(), fn_zero(),
                              fn_zero());
    FieldTriple g = b_field_from_aux(b, CylPoint(1.4, 2.0, 0.0));
    CHECK(g.B_r == 0.0);
    CHECK(g.B_phi == 0.0);
    CHECK(g.B_z_cyl == doctest::Approx(-1.4).epsilon(1e-14));  // -rho'/2 = -r
}

TEST_CASE("field map is linear in the quintuple") {
    AuxQuintuple a = make_aux(fn_poly(0, 0, 0.3), fn_poly(0, 0.2, 0), fn_trig(0.1, 0, 1),
                              fn_zero(), fn_zero());
    AuxQuintuple b = make_aux(fn_zero(), fn_zero(), fn_zero(), fn_trig(0, 0.4, 1),
                              fn_const(0.5));
    AuxQuintuple s = make_aux(fn_sum(a.rho, fn_scale(2, b.rho)),
                              fn_sum(a.sigma, fn_scale(2, b.sigma)),
                              fn_sum(a.tau, fn_scale(2, b.tau)),
                              fn_sum(a.psi, fn_scale(2, b.psi)),
                              fn_sum(a.mu, fn_scale(2, b.mu)));
    CylPoint at(1.6, 0.8, -0.4);
    FieldTriple fa = b_field_from_aux(a, at), fb = b_field_from_aux(b, at),
                fs = b_field_from_aux(s, at);
    CHECK(fs.B_r == doctest::Approx(fa.B_r + 2 * fb.B_r).scale(1).epsilon(1e-13));
    CHECK(fs.B_phi == doctest::Approx(fa.B_phi + 2 * fb.B_phi).scale(1).epsilon(1e-13));
    CHECK(fs.B_z_cyl ==
          doctest::Approx(fa.B_z_cyl + 2 * fb.B_z_cyl).scale(1).epsilon(1e-13));
}

TEST_CASE("determinant closed form") {
    CylPoint at(1.0, 0.0, 0.5);
    AuxQuintuple zero = AuxQuintuple::zero();
    CHECK(matrix_M(zero, at).norm() == 0.0);
    CHECK(det_M(zero, at) == 0.0);

    // psi' = 1 at phi = 0, mu = 1, sigma = 1 at r = 1 -> det 4.
    AuxQuintuple a = make_aux(fn_zero(), fn_const(1.0), fn_zero(), fn_trig(1, 0, 1),
                              fn_const(1.0));
    CHECK(det_M(a, at) == doctest::Approx(4.0).epsilon(1e-13));

    // psi' = 2, mu = 3, sigma = 0.5 -> det 12.
    AuxQuintuple b = make_aux(fn_zero(), fn_const(0.5), fn_zero(), fn_trig(2, 0, 1),
                              fn_const(3.0));
    CHECK(det_M(b, at) == doctest::Approx(12.0).epsilon(1e-13));

    // mu = 0 kills the determinant regardless of the rest.
    AuxQuintuple c = make_aux(fn_poly(0, 1, 0), fn_const(2.0), fn_const(0.3),
                              fn_trig(1, 1, 2), fn_zero());
    CHECK(det_M(c, CylPoint(1.7, 0.9, 0.1)) == 0.0);
}

TEST_CASE("closed-form determinant matches the direct determinant") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-1.5, 1.5), rad(0.5, 2.0),
        ang(0.0, 6.28), lin(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        AuxQuintuple aux = make_aux(
            fn_poly(coef(rng), coef(rng), coef(rng)), fn_poly(coef(rng), coef(rng), 0),
            fn_trig(coef(rng), coef(rng), 1.0), fn_trig(coef(rng), coef(rng), 2.0),
            fn_poly(coef(rng), coef(rng), 0));
        CylPoint at(rad(rng), ang(rng), lin(rng));
        double closed = det_M(aux, at);
        double direct = matrix_M(aux, at).determinant();
        CHECK(std::abs(closed - direct) <=
              1e-10 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("generated fields are divergence-free as 2-forms") {
    AuxQuintuple aux = make_aux(fn_poly(0, 0.3, 0.2), fn_poly(0, 0.4, 0),
                                fn_trig(0.5, 0.2, 1.0), fn_trig(0.3, -0.1, 2.0),
                                fn_poly(0.2, 0.6, 0));
    auto Br = [&](const CylPoint& p) { return b_field_from_aux(aux, p).B_r; };
    auto Bphi = [&](const CylPoint& p) { return b_field_from_aux(aux, p).B_phi; };
    auto Bz = [&](const CylPoint& p) { return b_field_from_aux(aux, p).B_z_cyl; };
    for (double r : {0.6, 1.0, 1.8}) {
        for (double phi : {0.3, 2.1, 4.4}) {
            for (double z : {-0.7, 0.0, 0.9}) {
                CylPoint at(r, phi, z);
                double div = fd_partial(Br, at, Axis::R, 1e-3) +
                             fd_partial(Bphi, at, Axis::Phi, 1e-3) +
                             fd_partial(Bz, at, Axis::Z, 1e-3);
                CHECK(std::abs(div) <= 1e-7);
            }
        }
    }
}

TEST_CASE("alpha vanishes in the degenerate configurations") {
    CylPoint at(1.2, 0.7, 0.3);
    CHECK(alpha(AuxQuintuple::zero(), at) == 0.0);
    // psi = 0, tau' = 0, mu' = 0.
    AuxQuintuple a = make_aux(fn_poly(0, 0, 0.4), fn_poly(0, 0.3, 0), fn_const(0.8),
                              fn_zero(), fn_const(0.6));
    CHECK(std::abs(alpha(a, at)) <= 1e-12);
}

TEST_CASE("periodicity validation") {
    AuxQuintuple good = make_aux(fn_poly(0, 1, 0), fn_zero(), fn_trig(1, 0, 2),
                                 fn_trig(0, 1, 1), fn_poly(0, 1, 0));
    CHECK_NOTHROW(validate_periodicity(good));
    AuxQuintuple bad = good;
    bad.tau = fn_poly(0, 1, 0);  // tau(phi) = phi is not periodic
    CHECK_THROWS_AS(validate_periodicity(bad), ValidationError);
}

TEST_CASE("reduced residuals: exact zero on the trivial system") {
    ScalarField w = [](const CylPoint&) { return 0.0; };
    ReducedResiduals res =
        reduced_residuals(AuxQuintuple::zero(), w, CylPoint(1.0, 0.5, 0.2));
    CHECK(res.raw.cwiseAbs().maxCoeff() == 0.0);
    CHECK(res.normalized.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reduced residuals: shipped family satisfies the system") {
    F1Params p;
    p.rho = fn_poly(0, 0, 0.3);
    p.sigma = fn_poly(0, 0.2, 0);
    p.W1 = fn_poly(0, 0, 0.25);
    p.tau0 = 0.5;
    p.mu0 = 1.0;
    SystemInstance sys = build_f1(p);
    for (double r : {0.7, 1.2, 1.9}) {
        for (double phi : {0.4, 3.0}) {
            ReducedResiduals res = reduced_residuals(sys.aux, sys.W,
                                                     CylPoint(r, phi, 0.3));
            CHECK(res.normalized.cwiseAbs().maxCoeff() <= 1e-7);
        }
    }
}

TEST_CASE("reduced residuals: the forbidden full-rank configuration fails") {
    // psi' != 0, mu != 0, sigma != 0 simultaneously: condition A-b cannot hold.
    AuxQuintuple aux = make_aux(fn_zero(), fn_const(1.0), fn_zero(),
                                fn_trig(1, 0, 1), fn_const(1.0));
    ScalarField w = [](const CylPoint&) { return 0.0; };
    ReducedResiduals res = reduced_residuals(aux, w, CylPoint(1.3, 0.4, 0.2));
    CHECK(std::abs(res.raw[1]) > 0.1);
}

TEST_CASE("reduced residuals need clearance above the minimum radius") {
    ScalarField w = [](const CylPoint&) { return 0.0; };
    CHECK_THROWS_AS(
        reduced_residuals(AuxQuintuple::zero(), w, CylPoint(2e-6, 0.0, 0.0)),
        DomainError);
}
