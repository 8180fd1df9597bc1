#pragma once

#include <optional>

#include "hgraph/curve.hpp"

namespace hgraph {

/// Cone over a base curve in the plane x3 = 0, with a finite vertex above
/// the enclosed domain, or the vertical cylinder over the base (vertex at
/// infinity). Mean curvatures are non-normalized (sum of principal
/// curvatures) and signed so that a cone opening downward over its interior
/// is positive.
struct ConeSpec {
    PlanarCurve base;
    std::optional<Vec3> vertex;   // nullopt: cylinder (vertex at infinity)
    double cylinder_top = 1.0;    // graph height used for the cylinder case
    double ruling_cutoff = 0.95;  // sampled rulings stay in t <= cutoff

    bool is_cylinder() const { return !vertex.has_value(); }
    double vertex_height() const { return vertex ? vertex->z : 0.0; }
    Vec2 vertex_projection() const {
        if (!vertex) throw std::domain_error("cylinder has no vertex");
        return vertex->xy();
    }
};

ConeSpec make_cone(PlanarCurve base, Vec3 vertex);
ConeSpec make_cylinder(PlanarCurve base, double top_height = 1.0);

/// Mean curvature of the cone surface at the point above base_point.
/// Cylinder case: curve curvature of the base at the radially matched point.
double cone_mean_curvature(const ConeSpec& cone, Vec2 base_point);

/// Mean curvature at the ruling point (theta, t); t in [0,1), 0 on the base.
double cone_mean_curvature_at(const ConeSpec& cone, double theta, double t);

/// Height psi(x) of the cone graph above x. Cylinder case returns the
/// configured top height (used only for containment checks).
double cone_height(const ConeSpec& cone, Vec2 x);

struct HConeResult {
    bool ok = false;
    double min_curvature = 0.0;
    double margin = 0.0;  // min_curvature - H
};

/// Samples the cone mean curvature over a (base parameter) x (ruling) grid,
/// rulings bounded away from the vertex by the cutoff, and tests min >= H.
HConeResult is_H_cone(const ConeSpec& cone, double H, int n_samples = 64);

/// Signed curvature of L with respect to the unit normal pointing into the
/// enclosed domain (the paper's H_L at the given parameter).
double boundary_curvature(const PlanarCurve& L, double param);

}  // namespace hgraph
