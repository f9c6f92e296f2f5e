#include <cmath>

#include "cylint/fd.hpp"
#include "doctest.h"

using namespace cylint;

TEST_CASE("fourth-order first derivative") {
    auto f = [](double x) { return std::sin(x); };
    CHECK(fd_d1(f, 0.7, 1e-3) == doctest::Approx(std::cos(0.7)).epsilon(1e-12));
    auto g = [](double x) { return x * x * x; };
    // Exact for cubics.
    CHECK(fd_d1(g, 1.3, 1e-2) == doctest::Approx(3 * 1.3 * 1.3).epsilon(1e-12));
}

TEST_CASE("halving the step shrinks the error about sixteen-fold") {
    auto f = [](double x) { return std::exp(std::sin(2.0 * x)); };
    double x = 0.9;
    double exact = 2.0 * std::cos(2.0 * x) * f(x);
    double e1 = std::abs(fd_d1(f, x, 2e-2) - exact);
    double e2 = std::abs(fd_d1(f, x, 1e-2) - exact);
    double ratio = e1 / e2;
    CHECK(ratio > 10.0);
    CHECK(ratio < 24.0);
}

TEST_CASE("coordinate shifts") {
    CylPoint at(1.5, 0.4, -0.3);
    CylPoint pr = shifted(at, Axis::R, 0.1);
    CHECK(pr.r == doctest::Approx(1.6).epsilon(1e-14));
    CHECK(pr.phi == doctest::Approx(0.4).epsilon(1e-14));
    CylPoint pp = shifted(at, Axis::Phi, -0.2);
    CHECK(pp.phi == doctest::Approx(0.2).epsilon(1e-13));
    CylPoint pz = shifted(at, Axis::Z, 0.25);
    CHECK(pz.z == doctest::Approx(-0.05).epsilon(1e-13));
}

TEST_CASE("partials of a scalar field") {
    auto f = [](const CylPoint& p) {
        return p.r * p.r * std::sin(p.phi) + std::exp(0.5 * p.z);
    };
    CylPoint at(1.2, 0.8, 0.4);
    CHECK(fd_partial(f, at, Axis::R, 1e-3) ==
          doctest::Approx(2 * at.r * std::sin(at.phi)).epsilon(1e-10));
    CHECK(fd_partial(f, at, Axis::Phi, 1e-3) ==
          doctest::Approx(at.r * at.r * std::cos(at.phi)).epsilon(1e-10));
    CHECK(fd_partial(f, at, Axis::Z, 1e-3) ==
          doctest::Approx(0.5 * std::exp(0.5 * at.z)).epsilon(1e-10));
}

TEST_CASE("mixed second partials") {
    auto f = [](const CylPoint& p) { return p.r * p.r * std::sin(p.phi) * p.z; };
    CylPoint at(1.4, 1.1, 0.6);
    CHECK(fd_partial2(f, at, Axis::R, Axis::Phi, 1e-3) ==
          doctest::Approx(2 * at.r * std::cos(at.phi) * at.z).epsilon(1e-8));
    CHECK(fd_partial2(f, at, Axis::Phi, Axis::Z, 1e-3) ==
          doctest::Approx(at.r * at.r * std::cos(at.phi)).epsilon(1e-8));
    // Symmetry of the mixed stencil.
    CHECK(fd_partial2(f, at, Axis::R, Axis::Z, 1e-3) ==
          doctest::Approx(fd_partial2(f, at, Axis::Z, Axis::R, 1e-3)).epsilon(1e-9));
}

TEST_CASE("step scales with the coordinate magnitude") {
    // At r = 100 an unscaled step h0 = 1e-3 would lose ~5 digits on r^2;
    // the scaled stencil stays accurate.
    auto f = [](const CylPoint& p) { return std::sin(p.r / 20.0); };
    CylPoint at(100.0, 0.0, 0.0);
    CHECK(fd_partial(f, at, Axis::R, 1e-3) ==
          doctest::Approx(std::cos(5.0) / 20.0).epsilon(1e-9));
}
