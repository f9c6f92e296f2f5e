#include "cylint/fd.hpp"

#include <cmath>

namespace cylint {

double fd_d1(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

CylPoint shifted(const CylPoint& at, Axis axis, double delta) {
    switch (axis) {
        case Axis::R: return CylPoint(at.r + delta, at.phi, at.z);
        case Axis::Phi: return CylPoint(at.r, at.phi + delta, at.z);
        default: return CylPoint(at.r, at.phi, at.z + delta);
    }
}

namespace {
double coord(const CylPoint& at, Axis axis) {
    switch (axis) {
        case Axis::R: return at.r;
        case Axis::Phi: return at.phi;
        default: return at.z;
    }
}
}  // namespace

double fd_partial(const std::function<double(const CylPoint&)>& f, const CylPoint& at,
                  Axis axis, double h0) {
    double h = h0 * std::max(1.0, std::abs(coord(at, axis)));
    auto g = [&](double d) { return f(shifted(at, axis, d)); };
    return (-g(2 * h) + 8 * g(h) - 8 * g(-h) + g(-2 * h)) / (12 * h);
}

double fd_partial2(const std::function<double(const CylPoint&)>& f, const CylPoint& at,
                   Axis a, Axis b, double h0) {
    if (a == b) {
        double h = h0 * std::max(1.0, std::abs(coord(at, a)));
        auto g = [&](double d) { return f(shifted(at, a, d)); };
        return (-g(2 * h) + 16 * g(h) - 30 * g(0) + 16 * g(-h) - g(-2 * h)) /
               (12 * h * h);
    }
    auto inner = [&](const CylPoint& p) { return fd_partial(f, p, b, h0); };
    return fd_partial(inner, at, a, h0);
}

}  // namespace cylint
