#ifndef CYLINT_ODES_HPP
#define CYLINT_ODES_HPP

#include <vector>

#include "cylint/function1d.hpp"

namespace cylint {

// Dense numeric solution of a profile ODE over [x0, x1], with the defining
// first integral tracked as an accuracy monitor.
struct ProfileSolution {
    std::vector<double> x;       // nodes, increasing
    std::vector<double> y;       // value at nodes
    std::vector<double> dy;      // first derivative at nodes
    std::vector<double> monitor; // first-integral residual at nodes
    std::vector<int> branch;     // sign of y' at nodes (branch of the sqrt form)
    bool truncated = false;      // span cut short (positivity loss)

    double span_lo() const { return x.front(); }
    double span_hi() const { return x.back(); }
    double max_monitor() const;

    // Cubic Hermite interpolation between nodes; second and third derivative
    // at query points come from the ODE right-hand side.
    double value(double q) const;
    double deriv(double q) const;

    // Function1D view; d2/d3 supplied by the stored RHS closure.
    Function1D as_function() const;

    std::function<double(double, double)> rhs;         // y'' = rhs(y, y')
    std::function<double(double, double, double)> rhs3; // y''' = rhs3(y, y', y'')
};

// gamma(phi) of the exotic family: integrates the second-order form
//   gamma'' = -(gamma'^2 + 12 gamma^2 - 4 beta1 + 2 f1 gamma) / (2 gamma)
// with the first integral
//   gamma gamma'^2 + 4 gamma^3 - 4 beta1 gamma + f1 gamma^2 = beta2
// as monitor. Initial data must satisfy the first integral to 1e-10.
ProfileSolution solve_gamma(double f1, double beta1, double beta2, double gamma0,
                            double dgamma0, double x0, double x1, int steps = 10000);

// M(Z) or T(phi) of the elliptic family: y'' = (3 C y^2 + 2 C1 y + C2) / 2
// with monitor y'^2 - (C y^3 + C1 y^2 + C2 y + C3).
ProfileSolution solve_MT(double C, double C1, double C2, double C3, double y0,
                         double dy0, double x0, double x1, int steps = 10000);

}  // namespace cylint

#endif
