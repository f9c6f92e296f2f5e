#include <cmath>
#include <numbers>

#include "cylint/odes.hpp"
#include "cylint/specialfn.hpp"
#include "doctest.h"

using namespace cylint;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("angular profile matches the closed form") {
    // f1 = -8, beta1 = -0.5, beta2 = 0: gamma = (sqrt(32) sin(2 phi) + 8) / 8.
    double g = std::sqrt(64.0 * (-0.5) + 64.0);
    double gamma0 = (0.0 * g + 8.0) / 8.0;
    double dgamma0 = 2.0 * g / 8.0;
    ProfileSolution sol = solve_gamma(-8.0, -0.5, 0.0, gamma0, dgamma0, 0.0, kPi);
    CHECK(sol.max_monitor() <= 1e-9);
    for (double phi = 0.0; phi <= kPi; phi += 0.05) {
        double exact = (g * std::sin(2.0 * phi) + 8.0) / 8.0;
        CHECK(std::abs(sol.value(phi) - exact) <= 1e-8);
        double dexact = 2.0 * g * std::cos(2.0 * phi) / 8.0;
        CHECK(std::abs(sol.deriv(phi) - dexact) <= 1e-7);
    }
    // Period pi: endpoint returns to the initial data.
    CHECK(std::abs(sol.value(kPi) - gamma0) <= 1e-8);
}

TEST_CASE("constant angular profile is a fixed point") {
    double gamma0 = 0.5, f1 = -8.0;
    double beta1 = (12.0 * gamma0 * gamma0 + 2.0 * f1 * gamma0) / 4.0;
    double beta2 = 4.0 * gamma0 * gamma0 * gamma0 - 4.0 * beta1 * gamma0 +
                   f1 * gamma0 * gamma0;
    ProfileSolution sol = solve_gamma(f1, beta1, beta2, gamma0, 0.0, 0.0, 2.0);
    for (double phi = 0.0; phi <= 2.0; phi += 0.2)
        CHECK(std::abs(sol.value(phi) - gamma0) <= 1e-12);
}

TEST_CASE("angular profile without closed form keeps its first integral") {
    // beta2 = 1: no elementary solution; the invariant is the only gate.  With
    // beta2 > 0 the profile inevitably reaches gamma = 0 (the first-integral
    // polynomial is positive there), so the span truncates and the monitor is
    // asserted away from the singular tail.
    double gamma0 = 1.0;
    double rad = 1.0 - 4.0 * gamma0 * gamma0 * gamma0 +
                 4.0 * (-0.5) * gamma0 + 8.0 * gamma0 * gamma0;
    ProfileSolution sol =
        solve_gamma(-8.0, -0.5, 1.0, gamma0, std::sqrt(rad), 0.0, kPi);
    CHECK(sol.truncated);
    for (size_t i = 0; i < sol.x.size(); ++i) {
        double y = sol.y[i], dy = sol.dy[i];
        double scale = std::abs(y * dy * dy) + 4 * std::abs(y * y * y) +
                       2 * std::abs(y) + 8 * y * y + 1.0;
        CHECK(std::abs(sol.monitor[i]) <= 1e-9 * std::max(1.0, scale));
    }
}

TEST_CASE("inconsistent initial data is rejected") {
    CHECK_THROWS_AS(solve_gamma(-8.0, -0.5, 0.0, 1.0, 0.0, 0.0, 1.0),
                    InconsistentInitialData);
    CHECK_THROWS_AS(solve_MT(4.0, -24.0, 44.0, -24.0, 1.0, 1.0, 0.0, 1.0),
                    InconsistentInitialData);
}

TEST_CASE("positivity loss truncates the span") {
    // beta1 > 0 makes the sine amplitude exceed the offset: gamma reaches zero.
    double g = std::sqrt(64.0 * 0.5 + 64.0);
    ProfileSolution sol = solve_gamma(-8.0, 0.5, 0.0, 1.0, 2.0 * g / 8.0, 0.0, kPi);
    CHECK(sol.truncated);
    CHECK(sol.span_hi() < kPi);
    for (double y : sol.y) CHECK(y > 0.0);
}

TEST_CASE("cubic profile matches the bounded elliptic solution") {
    // Roots (3, 2, 1), C = 4: y'^2 = 4 (y-3)(y-2)(y-1), started at the lower
    // turning point, oscillates between 1 and 2 as a squared elliptic sine.
    double C = 4.0, M1 = 3.0, M2 = 2.0, M3 = 1.0;
    double c1 = -C * (M1 + M2 + M3);
    double c2 = C * (M1 * M2 + M1 * M3 + M2 * M3);
    double c3 = -C * M1 * M2 * M3;
    ProfileSolution sol = solve_MT(C, c1, c2, c3, M3, 0.0, 0.0, 3.0);
    CHECK(sol.max_monitor() <= 1e-9);
    EllipticModulus k{std::sqrt((M2 - M3) / (M1 - M3))};
    double cu = 0.5 * std::sqrt(C * (M1 - M3));
    for (double z = 0.0; z <= 3.0; z += 0.1) {
        double sn = jacobi_sn_cn_dn(cu * z, k).sn;
        double exact = M3 + (M2 - M3) * sn * sn;
        CHECK(std::abs(sol.value(z) - exact) <= 1e-8);
        CHECK(sol.value(z) >= M3 - 1e-9);
        CHECK(sol.value(z) <= M2 + 1e-9);
    }
}

TEST_CASE("cubic profile matches the double-root hyperbolic solution") {
    // Double root M1 = M2 = 2, M3 = 0.5, C = 1: squared-tanh kink.
    double C = 1.0, M1 = 2.0, M3 = 0.5;
    double c1 = -C * (2.0 * M1 + M3);
    double c2 = C * (M1 * M1 + 2.0 * M1 * M3);
    double c3 = -C * M1 * M1 * M3;
    ProfileSolution sol = solve_MT(C, c1, c2, c3, M3, 0.0, 0.0, 2.0);
    CHECK(sol.max_monitor() <= 1e-9);
    double cu = 0.5 * std::sqrt(C * (M1 - M3));
    for (double z = 0.0; z <= 2.0; z += 0.1) {
        double t = std::tanh(cu * z);
        double exact = M3 + (M1 - M3) * t * t;
        CHECK(std::abs(sol.value(z) - exact) <= 1e-8);
    }
}

TEST_CASE("degenerate cubic reduces to exponentials") {
    // C = 0, c1 = k0^2: y = (k1 e^{k0 x} - k2 e^{-k0 x} + k3) / k0.
    double k0 = 1.0, k1 = 0.3, k2 = 0.2, k3 = 0.1;
    double c1 = k0 * k0, c2 = -2.0 * k3 * k0, c3 = 4.0 * k1 * k2 + k3 * k3;
    double y0 = (k1 - k2 + k3) / k0, dy0 = k1 + k2;
    ProfileSolution sol = solve_MT(0.0, c1, c2, c3, y0, dy0, 0.0, 2.0);
    CHECK(sol.max_monitor() <= 1e-9);
    for (double x = 0.0; x <= 2.0; x += 0.1) {
        double exact = (k1 * std::exp(k0 * x) - k2 * std::exp(-k0 * x) + k3) / k0;
        CHECK(std::abs(sol.value(x) - exact) <= 1e-9);
    }
}

TEST_CASE("solution exposes a consistent function view") {
    ProfileSolution sol = solve_MT(4.0, -24.0, 44.0, -24.0, 1.0, 0.0, 0.0, 2.0);
    Function1D f = sol.as_function();
    CHECK(f.valid());
    CHECK(derivative_consistent(f, 0.1, 1.9));
    // Second derivative from the stored right-hand side.
    double x = 0.7, y = f(x);
    double rhs = (3.0 * 4.0 * y * y + 2.0 * (-24.0) * y + 44.0) / 2.0;
    CHECK(f.d2(x) == doctest::Approx(rhs).epsilon(1e-7));
}

TEST_CASE("branch bookkeeping tracks the sign of the derivative") {
    ProfileSolution sol = solve_MT(4.0, -24.0, 44.0, -24.0, 1.0, 0.0, 0.0, 3.0);
    bool saw_plus = false, saw_minus = false;
    for (size_t i = 0; i < sol.x.size(); ++i) {
        if (sol.branch[i] > 0) saw_plus = true;
        if (sol.branch[i] < 0) saw_minus = true;
        if (std::abs(sol.dy[i]) > 1e-6)
            CHECK(sol.branch[i] == (sol.dy[i] > 0 ? 1 : -1));
    }
    CHECK(saw_plus);
    CHECK(saw_minus);  // the bounded solution oscillates, so both branches occur
}
