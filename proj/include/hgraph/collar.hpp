#pragma once

#include <optional>

#include "hgraph/curve.hpp"
#include "hgraph/periodic_spline.hpp"

namespace hgraph {

/// Tubular-neighborhood data near the domain boundary L: inward distance s,
/// nearest-point parameter, parallel-curve curvature H^s, and the boundary
/// data extended as constant along normals.
class CollarChart {
  public:
    struct Point {
        double s = 0.0;      // signed distance to L, positive into the domain
        double theta = 0.0;  // nearest-point parameter on L
        double H_s = 0.0;    // curvature of the parallel curve through x
        double phi = 0.0;    // extended boundary data
        Vec2 grad_phi;       // plane gradient of the extension
    };

    Point query(Vec2 x) const;
    double distance(Vec2 x) const;  // signed distance only

    double epsilon() const { return epsilon_; }
    double B_max() const { return B_max_; }
    /// C^2-norm bound of the extension: max over the collar of
    /// |phi| + |grad phi| + |Hess phi|.
    double phi_c2() const { return phi_c2_; }
    double max_grad_phi() const { return max_grad_phi_; }
    bool phi_constant() const { return !phi_spline_.has_value(); }
    double phi_on_curve(double theta) const;

    const PlanarCurve& curve() const { return L_; }

    friend CollarChart build_collar(const PlanarCurve& L,
                                    const std::optional<PeriodicSpline>& phi,
                                    double phi_const, double epsilon);

  private:
    PlanarCurve L_;
    std::optional<PeriodicSpline> phi_spline_;
    double phi_const_ = 0.0;
    double epsilon_ = 0.0;
    double B_max_ = 1.0;
    double phi_c2_ = 0.0;
    double max_grad_phi_ = 0.0;
};

/// Builds the chart; epsilon defaults to half the minimal curvature radius
/// of L. phi: explicit spline data on L, or a constant when absent.
CollarChart build_collar(const PlanarCurve& L,
                         const std::optional<PeriodicSpline>& phi = std::nullopt,
                         double phi_const = 0.0, double epsilon = 0.0);

}  // namespace hgraph
