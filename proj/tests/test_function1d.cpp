#include <cmath>

#include "cylint/function1d.hpp"
#include "doctest.h"

using namespace cylint;

TEST_CASE("grammar values") {
    CHECK(fn_zero()(3.7) == 0.0);
    CHECK(fn_const(2.5)(-1.0) == 2.5);
    Function1D p = fn_poly(1.0, 2.0, 3.0, 4.0, 5.0);
    CHECK(p(2.0) == doctest::Approx(1 + 4 + 12 + 32 + 80).epsilon(1e-14));
    CHECK(fn_power(2.0, 1.5)(4.0) == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(fn_trig(1.0, 0.5, 2.0)(0.3) ==
          doctest::Approx(std::sin(0.6) + 0.5 * std::cos(0.6)).epsilon(1e-14));
    CHECK(fn_exp2(1.0, 2.0, 0.5)(1.0) ==
          doctest::Approx(std::exp(0.5) + 2.0 * std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("analytic derivatives agree with finite differences") {
    CHECK(derivative_consistent(fn_poly(1, -2, 0.5, 0.1, 0.02), -2.0, 2.0));
    CHECK(derivative_consistent(fn_power(1.5, 2.5), 0.5, 3.0));
    CHECK(derivative_consistent(fn_trig(0.7, -0.3, 3.0), -3.0, 3.0));
    CHECK(derivative_consistent(fn_exp2(0.4, 0.6, 1.2), -1.0, 1.0));
    CHECK(derivative_consistent(
        fn_sum(fn_trig(1, 0, 1), fn_scale(0.5, fn_poly(0, 0, 1))), -2.0, 2.0));
}

TEST_CASE("higher derivatives of the grammar are exact") {
    Function1D t = fn_trig(2.0, 0.0, 3.0);  // 2 sin(3x)
    double x = 0.4;
    CHECK(t.d1(x) == doctest::Approx(6.0 * std::cos(1.2)).epsilon(1e-14));
    CHECK(t.d2(x) == doctest::Approx(-18.0 * std::sin(1.2)).epsilon(1e-14));
    CHECK(t.d3(x) == doctest::Approx(-54.0 * std::cos(1.2)).epsilon(1e-14));
    Function1D q = fn_poly(0, 0, 0, 1);  // x^3
    CHECK(q.d1(2.0) == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(q.d2(2.0) == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(q.d3(2.0) == doctest::Approx(6.0).epsilon(1e-14));
    Function1D e = fn_exp2(1.0, -1.0, 2.0);
    CHECK(e.d3(0.3) ==
          doctest::Approx(8.0 * (std::exp(0.6) + std::exp(-0.6))).epsilon(1e-13));
}

TEST_CASE("sum and scale combinators") {
    Function1D f = fn_sum(fn_poly(0, 1, 0), fn_trig(1, 0, 1));  // x + sin x
    CHECK(f(0.5) == doctest::Approx(0.5 + std::sin(0.5)).epsilon(1e-14));
    CHECK(f.d1(0.5) == doctest::Approx(1.0 + std::cos(0.5)).epsilon(1e-14));
    Function1D g = fn_scale(-2.0, f);
    CHECK(g(0.5) == doctest::Approx(-2.0 * f(0.5)).epsilon(1e-14));
    CHECK(g.d2(0.5) == doctest::Approx(-2.0 * f.d2(0.5)).epsilon(1e-14));
}

TEST_CASE("zero detection and periodicity probes") {
    CHECK(is_zero_function(fn_zero()));
    CHECK(is_zero_function(fn_const(0.0)));
    CHECK(!is_zero_function(fn_const(1e-3)));
    CHECK(is_2pi_periodic(fn_trig(1.0, 0.5, 2.0)));
    CHECK(is_2pi_periodic(fn_const(3.0)));
    CHECK(!is_2pi_periodic(fn_poly(0, 1, 0)));
    CHECK(!is_2pi_periodic(fn_trig(1.0, 0.0, 0.5)));
}

TEST_CASE("validity flag") {
    Function1D empty;
    CHECK(!empty.valid());
    CHECK(fn_zero().valid());
}
