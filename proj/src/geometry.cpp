#include "cylint/geometry.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace cylint {

namespace {

double g_r_min = [] {
    if (const char* env = std::getenv("CYLINT_RMIN")) {
        double v = std::atof(env);
        if (v > 0.0) return v;
    }
    return 1e-6;
}();

}  // namespace

double r_min() { return g_r_min; }
void set_r_min(double value) { g_r_min = value; }

void require_radius(double r) {
    if (!(r >= g_r_min))
        throw DomainError("radius " + std::to_string(r) + " below r_min " +
                          std::to_string(g_r_min));
}

double wrap_angle(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phi, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w = 0.0;  // fmod can round up to 2*pi
    return w;
}

CylPoint::CylPoint(double r_, double phi_, double z_)
    : r(r_), phi(wrap_angle(phi_)), z(z_) {
    if (!(r > 0.0)) throw DomainError("CylPoint requires r > 0");
}

CartPoint cyl_to_cart_point(const CylPoint& p) {
    return {p.r * std::cos(p.phi), p.r * std::sin(p.phi), p.z};
}

CylPoint cart_to_cyl_point(const CartPoint& p) {
    double r2 = p.x * p.x + p.y * p.y;
    if (r2 == 0.0) throw AxisError("phi undefined on the z-axis");
    return CylPoint(std::sqrt(r2), std::atan2(p.y, p.x), p.z);
}

CartPhase cyl_to_cart_momenta(const CylPhase& ph) {
    double c = std::cos(ph.point.phi), s = std::sin(ph.point.phi);
    double r = ph.point.r;
    CartPhase out;
    out.point = cyl_to_cart_point(ph.point);
    out.p_x = c * ph.p_r - s / r * ph.p_phi;
    out.p_y = s * ph.p_r + c / r * ph.p_phi;
    out.p_z = ph.p_z;
    return out;
}

CylPhase cart_to_cyl_momenta(const CartPhase& ph) {
    CylPoint pt = cart_to_cyl_point(ph.point);
    double c = std::cos(pt.phi), s = std::sin(pt.phi);
    return CylPhase{pt,
                    c * ph.p_x + s * ph.p_y,
                    pt.r * (c * ph.p_y - s * ph.p_x),
                    ph.p_z};
}

CartField field_cyl_to_cart(const FieldTriple& f, const CylPoint& at) {
    double c = std::cos(at.phi), s = std::sin(at.phi);
    double r = at.r;
    return {c / r * f.B_r - s * f.B_phi,
            s / r * f.B_r + c * f.B_phi,
            f.B_z_cyl / r};
}

FieldTriple field_cart_to_cyl(const CartField& f, const CylPoint& at) {
    double c = std::cos(at.phi), s = std::sin(at.phi);
    double r = at.r;
    return {r * (c * f.B_x + s * f.B_y),
            c * f.B_y - s * f.B_x,
            r * f.B_z};
}

}  // namespace cylint
