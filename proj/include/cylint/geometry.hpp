#ifndef CYLINT_GEOMETRY_HPP
#define CYLINT_GEOMETRY_HPP

#include <Eigen/Dense>

#include "cylint/errors.hpp"

namespace cylint {

// Cylindrical point, r > 0, phi stored wrapped into [0, 2*pi).
struct CylPoint {
    double r;
    double phi;
    double z;

    CylPoint(double r_, double phi_, double z_);
};

double wrap_angle(double phi);  // into [0, 2*pi)

struct CartPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Phase-space point with canonical momenta conjugate to (r, phi, Z).
struct CylPhase {
    CylPoint point;
    double p_r;
    double p_phi;
    double p_z;
};

struct CartPhase {
    CartPoint point;
    double p_x = 0.0;
    double p_y = 0.0;
    double p_z = 0.0;
};

// 2-form components B^r, B^phi, B^Z of the magnetic field B = dA in
// cylindrical coordinates. Not orthonormal-frame components.
struct FieldTriple {
    double B_r = 0.0;
    double B_phi = 0.0;
    double B_z_cyl = 0.0;
};

struct CartField {
    double B_x = 0.0;
    double B_y = 0.0;
    double B_z = 0.0;
};

CartPoint cyl_to_cart_point(const CylPoint& p);
CylPoint cart_to_cyl_point(const CartPoint& p);  // throws AxisError on the z-axis

CartPhase cyl_to_cart_momenta(const CylPhase& ph);
CylPhase cart_to_cyl_momenta(const CartPhase& ph);

CartField field_cyl_to_cart(const FieldTriple& f, const CylPoint& at);
FieldTriple field_cart_to_cyl(const CartField& f, const CylPoint& at);

// Throws DomainError when r < r_min.
void require_radius(double r);

}  // namespace cylint

#endif
