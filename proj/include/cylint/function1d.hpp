#ifndef CYLINT_FUNCTION1D_HPP
#define CYLINT_FUNCTION1D_HPP

#include <functional>
#include <string>

#include "cylint/errors.hpp"

namespace cylint {

// Smooth scalar function of one variable with analytic derivatives to order 3.
// Carrier for the auxiliary functions rho, sigma, tau, psi, mu and for the
// potential profile slots.
struct Function1D {
    std::function<double(double)> eval;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    std::function<double(double)> d3;

    double operator()(double x) const { return eval(x); }
    bool valid() const { return static_cast<bool>(eval); }
};

// Closed grammar of profile functions. Keeping the grammar closed means the
// derivatives are always exact; no symbolic engine is involved.
Function1D fn_zero();
Function1D fn_const(double c);
Function1D fn_poly(double c0, double c1, double c2, double c3 = 0.0, double c4 = 0.0);
Function1D fn_power(double a, double n);                 // a * x^n
Function1D fn_trig(double a, double b, double k);        // a sin(kx) + b cos(kx)
Function1D fn_exp2(double a, double b, double k);        // a e^{kx} + b e^{-kx}

Function1D fn_sum(Function1D f, Function1D g);
Function1D fn_scale(double c, Function1D f);

bool is_zero_function(const Function1D& f);  // samples a few points

// |d1 - centered difference of eval| <= 1e-6 * max(1, |d1|) on sampled points.
bool derivative_consistent(const Function1D& f, double lo, double hi, int samples = 17);

// |f(x) - f(x + 2*pi)| <= 1e-10 at sample points.
bool is_2pi_periodic(const Function1D& f, int samples = 16);

}  // namespace cylint

#endif
