#include "cylint/function1d.hpp"

#include <cmath>
#include <numbers>

namespace cylint {

Function1D fn_zero() {
    auto z = [](double) { return 0.0; };
    return {z, z, z, z};
}

Function1D fn_const(double c) {
    auto z = [](double) { return 0.0; };
    return {[c](double) { return c; }, z, z, z};
}

Function1D fn_poly(double c0, double c1, double c2, double c3, double c4) {
    return {
        [=](double x) { return c0 + x * (c1 + x * (c2 + x * (c3 + x * c4))); },
        [=](double x) { return c1 + x * (2 * c2 + x * (3 * c3 + x * 4 * c4)); },
        [=](double x) { return 2 * c2 + x * (6 * c3 + x * 12 * c4); },
        [=](double x) { return 6 * c3 + 24 * c4 * x; },
    };
}

Function1D fn_power(double a, double n) {
    return {
        [=](double x) { return a * std::pow(x, n); },
        [=](double x) { return a * n * std::pow(x, n - 1); },
        [=](double x) { return a * n * (n - 1) * std::pow(x, n - 2); },
        [=](double x) { return a * n * (n - 1) * (n - 2) * std::pow(x, n - 3); },
    };
}

Function1D fn_trig(double a, double b, double k) {
    return {
        [=](double x) { return a * std::sin(k * x) + b * std::cos(k * x); },
        [=](double x) { return k * (a * std::cos(k * x) - b * std::sin(k * x)); },
        [=](double x) { return -k * k * (a * std::sin(k * x) + b * std::cos(k * x)); },
        [=](double x) { return -k * k * k * (a * std::cos(k * x) - b * std::sin(k * x)); },
    };
}

Function1D fn_exp2(double a, double b, double k) {
    return {
        [=](double x) { return a * std::exp(k * x) + b * std::exp(-k * x); },
        [=](double x) { return k * (a * std::exp(k * x) - b * std::exp(-k * x)); },
        [=](double x) { return k * k * (a * std::exp(k * x) + b * std::exp(-k * x)); },
        [=](double x) { return k * k * k * (a * std::exp(k * x) - b * std::exp(-k * x)); },
    };
}

Function1D fn_sum(Function1D f, Function1D g) {
    return {
        [f, g](double x) { return f.eval(x) + g.eval(x); },
        [f, g](double x) { return f.d1(x) + g.d1(x); },
        [f, g](double x) { return f.d2(x) + g.d2(x); },
        [f, g](double x) { return f.d3(x) + g.d3(x); },
    };
}

Function1D fn_scale(double c, Function1D f) {
    return {
        [c, f](double x) { return c * f.eval(x); },
        [c, f](double x) { return c * f.d1(x); },
        [c, f](double x) { return c * f.d2(x); },
        [c, f](double x) { return c * f.d3(x); },
    };
}

bool is_zero_function(const Function1D& f) {
    if (!f.valid()) return true;
    for (double x : {0.13, 0.7, 1.0, 1.9, 2.7}) {
        if (f.eval(x) != 0.0 || f.d1(x) != 0.0) return false;
    }
    return true;
}

bool derivative_consistent(const Function1D& f, double lo, double hi, int samples) {
    double h = 1e-5 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    for (int i = 0; i < samples; ++i) {
        double x = lo + (hi - lo) * (i + 0.5) / samples;
        double fd = (f.eval(x + h) - f.eval(x - h)) / (2 * h);
        double d = f.d1(x);
        if (std::abs(fd - d) > 1e-6 * std::max(1.0, std::abs(d))) return false;
    }
    return true;
}

bool is_2pi_periodic(const Function1D& f, int samples) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < samples; ++i) {
        double x = two_pi * i / samples;
        if (std::abs(f.eval(x) - f.eval(x + two_pi)) > 1e-10) return false;
    }
    return true;
}

}  // namespace cylint
