#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hgraph/geom.hpp"

namespace hgraph {

enum class CurveKind { Circle, Ellipse, Spline };

/// Closed embedded C^2 curve in the plane, positively (counterclockwise)
/// oriented, parametrized over [0, 2*pi). The signed curvature is positive
/// where the curve bends toward the enclosed domain (a circle of radius r
/// has curvature 1/r with respect to the inward normal).
class PlanarCurve {
  public:
    /// Placeholder state (unit circle metadata, no cached integrals); assign
    /// from a factory before use.
    PlanarCurve() = default;

    static PlanarCurve circle(Vec2 center, double radius);
    static PlanarCurve ellipse(Vec2 center, double a, double b);
    /// Periodic cubic interpolation through the given control points,
    /// uniform parameter spacing. Points must be listed counterclockwise.
    static PlanarCurve spline(std::vector<Vec2> points);

    CurveKind kind() const { return kind_; }

    Vec2 position(double t) const;
    Vec2 derivative(double t) const;
    Vec2 second_derivative(double t) const;

    /// Signed curvature with respect to the inward (left) normal.
    double curvature(double t) const;

    /// Inward unit normal (points into the enclosed domain).
    Vec2 inward_normal(double t) const;

    double length() const { return length_; }
    double min_curvature() const { return min_curvature_; }
    double max_abs_curvature() const { return max_abs_curvature_; }

    /// Area centroid of the enclosed domain.
    Vec2 centroid() const { return centroid_; }
    double enclosed_area() const { return area_; }

    /// Winding-number point-in-domain test.
    bool contains(Vec2 p) const;

    /// Parameter of the closest curve point to p.
    double nearest_parameter(Vec2 p) const;
    double distance_to(Vec2 p) const;

    PlanarCurve scaled(double factor) const;  // dilation about the origin
    PlanarCurve translated(Vec2 d) const;
    PlanarCurve rotated(double angle) const;  // about the origin

    // construction parameters, for serialization
    Vec2 center() const { return center_; }
    double radius_a() const { return a_; }
    double radius_b() const { return b_; }
    const std::vector<Vec2>& control_points() const { return points_; }

  private:
    void finalize();

    CurveKind kind_ = CurveKind::Circle;
    Vec2 center_;
    double a_ = 1.0;
    double b_ = 1.0;
    std::vector<Vec2> points_;
    // periodic cubic spline second derivatives at the knots
    std::vector<Vec2> spline_m_;

    double length_ = 0.0;
    double area_ = 0.0;
    Vec2 centroid_;
    double min_curvature_ = 0.0;
    double max_abs_curvature_ = 0.0;
};

/// Intersects the ray origin + u*dir (u > 0) with the curve. Returns the
/// curve parameter of the unique hit. Throws if the ray misses the curve or
/// hits it more than once (curve not star-shaped as seen from the origin).
double ray_hit_parameter(const PlanarCurve& curve, Vec2 origin, Vec2 dir);

}  // namespace hgraph
