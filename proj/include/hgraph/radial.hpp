#pragma once

#include <vector>

namespace hgraph {

/// Height and radial slope of the spherical cap of radius R over the plane
/// circle of radius rho: value = sqrt(R^2 - rho^2), slope = -rho / value.
/// The cap solves Q_H = 0 with non-normalized H = n/R in any dimension n.
struct CapEval {
    double value = 0.0;
    double radial_slope = 0.0;
};

CapEval spherical_cap(double R, double rho, int n = 2);

/// Convenience: height above r of the cap with curvature H vanishing on
/// |x| = rho_boundary (R = n/H).
double cap_height(double H, double rho_boundary, double r, int n = 2);

/// Rotationally symmetric solution of the first-integral form of Eq. Q_H = 0:
/// r^{n-1} u'/W = -H r^n/n + c, i.e. u' = q/sqrt(1-q^2) with
/// q(r) = -H r/n + c r^{1-n}.
struct RadialProfile {
    int n = 2;
    double H = 0.0;
    double c = 0.0;  // flux constant of the first integral
    double r_in = 0.0;
    double r_out = 1.0;
    double u_out = 0.0;  // boundary value at r_out

    std::vector<double> r;   // sample grid
    std::vector<double> u;
    std::vector<double> du;
    double max_first_integral_residual = 0.0;

    double q(double radius) const;
    double slope(double radius) const;
    /// u at an arbitrary radius by adaptive quadrature from r_out.
    double eval(double radius) const;
};

/// Disk profile on [0, r_out] (c = 0, regular at the origin), boundary value
/// u_out at r_out. Throws when H r_out / n >= 1 (vertical slope: no radial
/// graph solution).
RadialProfile radial_shoot_disk(int n, double H, double r_out, double u_out);

/// Annulus profile on [r_in, r_out] with prescribed boundary values; the flux
/// constant c found by bisection. Throws when no admissible c matches.
RadialProfile radial_shoot_annulus(int n, double H, double r_in, double r_out,
                                   double u_in, double u_out);

}  // namespace hgraph
