#include "hgraph/cone.hpp"

#include <cmath>
#include <limits>

namespace hgraph {

ConeSpec make_cone(PlanarCurve base, Vec3 vertex) {
    if (vertex.z <= 0.0) throw std::invalid_argument("cone vertex height must be positive");
    if (!base.contains(vertex.xy()))
        throw std::invalid_argument("cone vertex must project strictly inside the base domain");
    ConeSpec c;
    c.base = std::move(base);
    c.vertex = vertex;
    return c;
}

ConeSpec make_cylinder(PlanarCurve base, double top_height) {
    ConeSpec c;
    c.base = std::move(base);
    c.vertex = std::nullopt;
    c.cylinder_top = top_height;
    return c;
}

double cone_mean_curvature_at(const ConeSpec& cone, double theta, double t) {
    if (cone.is_cylinder()) return cone.base.curvature(theta);
    if (t < 0.0 || t >= 1.0) throw std::domain_error("ruling parameter must lie in [0,1)");

    const Vec3 V = *cone.vertex;
    Vec2 g = cone.base.position(theta);
    Vec2 gd = cone.base.derivative(theta);
    Vec2 gdd = cone.base.second_derivative(theta);

    Vec3 s_theta{(1.0 - t) * gd.x, (1.0 - t) * gd.y, 0.0};
    Vec3 s_t{V.x - g.x, V.y - g.y, V.z};
    Vec3 s_tt{(1.0 - t) * gdd.x, (1.0 - t) * gdd.y, 0.0};
    Vec3 s_tq{-gd.x, -gd.y, 0.0};

    double E = s_theta.dot(s_theta);
    double F = s_theta.dot(s_t);
    double G = s_t.dot(s_t);
    double det = E * G - F * F;
    if (!(det > 0.0)) throw std::domain_error("degenerate cone parametrization");

    Vec3 n = s_theta.cross(s_t).normalized();
    // inner orientation: horizontal part of the normal points from the
    // surface point toward the vertical axis through the vertex
    Vec2 p_xy = Vec2{V.x, V.y} * t + g * (1.0 - t);
    Vec2 to_axis = cone.vertex_projection() - p_xy;
    if (Vec2{n.x, n.y}.dot(to_axis) < 0.0) n = n * (-1.0);

    double e = n.dot(s_tt);
    double f = n.dot(s_tq);
    // second form in the ruling direction vanishes (S_tt = 0)
    return (e * G - 2.0 * f * F) / det;
}

namespace {

// ruling coordinates (theta, t) of the cone point above x
struct RulingPoint { double theta; double t; };

RulingPoint locate_on_cone(const ConeSpec& cone, Vec2 x) {
    Vec2 vp = cone.vertex_projection();
    Vec2 d = x - vp;
    double rho = d.norm();
    double scale = std::sqrt(cone.base.enclosed_area());
    if (rho < 1e-13 * std::max(1.0, scale))
        throw std::domain_error("point coincides with the vertex projection (cone singularity)");
    double theta = ray_hit_parameter(cone.base, vp, d);
    double rho_base = (cone.base.position(theta) - vp).norm();
    if (rho > rho_base * (1.0 + 1e-9))
        throw std::domain_error("point lies outside the cone base domain");
    return {theta, std::max(0.0, 1.0 - rho / rho_base)};
}

}  // namespace

double cone_mean_curvature(const ConeSpec& cone, Vec2 base_point) {
    if (cone.is_cylinder()) {
        Vec2 c = cone.base.centroid();
        Vec2 d = base_point - c;
        if (d.norm() < 1e-14) throw std::domain_error("cylinder matching is ambiguous at the centroid");
        double theta = ray_hit_parameter(cone.base, c, d);
        return cone.base.curvature(theta);
    }
    auto rp = locate_on_cone(cone, base_point);
    return cone_mean_curvature_at(cone, rp.theta, rp.t);
}

double cone_height(const ConeSpec& cone, Vec2 x) {
    if (cone.is_cylinder()) return cone.cylinder_top;
    Vec2 vp = cone.vertex_projection();
    double scale = std::sqrt(cone.base.enclosed_area());
    if ((x - vp).norm() < 1e-13 * std::max(1.0, scale)) return cone.vertex_height();
    auto rp = locate_on_cone(cone, x);
    return rp.t * cone.vertex_height();
}

HConeResult is_H_cone(const ConeSpec& cone, double H, int n_samples) {
    if (n_samples < 16) throw std::invalid_argument("is_H_cone needs n_samples >= 16");
    if (!cone.is_cylinder() && cone.vertex_height() <= 0.0)
        throw std::invalid_argument("degenerate cone: vertex height must be positive");

    double min_k = std::numeric_limits<double>::max();
    if (cone.is_cylinder()) {
        for (int i = 0; i < n_samples; ++i)
            min_k = std::min(min_k, cone.base.curvature(kTwoPi * i / n_samples));
    } else {
        for (int i = 0; i < n_samples; ++i) {
            double theta = kTwoPi * i / n_samples;
            for (int j = 0; j < n_samples; ++j) {
                double t = cone.ruling_cutoff * j / (n_samples - 1);
                min_k = std::min(min_k, cone_mean_curvature_at(cone, theta, t));
            }
        }
    }
    // relative slack so exact-threshold cases (e.g. the unit cylinder at H=1)
    // are not rejected on sampling roundoff
    return {min_k >= H * (1.0 - 1e-9), min_k, min_k - H};
}

double boundary_curvature(const PlanarCurve& L, double param) {
    return L.curvature(param);
}

}  // namespace hgraph
