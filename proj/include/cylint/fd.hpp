#ifndef CYLINT_FD_HPP
#define CYLINT_FD_HPP

#include <functional>

#include "cylint/geometry.hpp"

namespace cylint {

enum class Axis { R = 0, Phi = 1, Z = 2 };

// 4th-order central difference f'(x), step h.
double fd_d1(const std::function<double(double)>& f, double x, double h);

CylPoint shifted(const CylPoint& at, Axis axis, double delta);

// Partial derivative of a scalar field of (r, phi, Z); the step is
// h0 * max(1, |coordinate|).
double fd_partial(const std::function<double(const CylPoint&)>& f, const CylPoint& at,
                  Axis axis, double h0);

// Mixed second partial via nested 4th-order stencils.
double fd_partial2(const std::function<double(const CylPoint&)>& f, const CylPoint& at,
                   Axis a, Axis b, double h0);

}  // namespace cylint

#endif
