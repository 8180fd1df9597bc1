#include "hgraph/supersolution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hgraph {

namespace {

bool point_in_mesh(const Mesh& mesh, Vec2 p) {
    for (const auto& tri : mesh.triangles) {
        Vec2 a = mesh.vertices[tri[0]], b = mesh.vertices[tri[1]], c = mesh.vertices[tri[2]];
        double d1 = (b - a).cross(p - a);
        double d2 = (c - b).cross(p - b);
        double d3 = (a - c).cross(p - c);
        if (d1 >= -1e-12 && d2 >= -1e-12 && d3 >= -1e-12) return true;
    }
    return false;
}

}  // namespace

Supersolution smooth_supersolution(const ConeSpec& cone, double H, const Mesh& mesh) {
    if (cone.is_cylinder())
        throw std::invalid_argument("vertex smoothing needs a finite vertex");

    Supersolution out;
    const Vec2 vp = cone.vertex_projection();
    const double hv = cone.vertex_height();

    double slope = 0.0, z_center = 0.0;
    if (point_in_mesh(mesh, vp)) {
        // ruling slope about the vertex projection; the cap construction
        // needs rotational symmetry there
        double m_min = std::numeric_limits<double>::max(), m_max = 0.0;
        for (int i = 0; i < 64; ++i) {
            double phi = kTwoPi * i / 64;
            double theta = ray_hit_parameter(cone.base, vp, {std::cos(phi), std::sin(phi)});
            double rho = (cone.base.position(theta) - vp).norm();
            double m = hv / rho;
            m_min = std::min(m_min, m);
            m_max = std::max(m_max, m);
        }
        if (m_max - m_min > 1e-8 * m_max)
            throw std::invalid_argument(
                "vertex smoothing requires a rotationally symmetric cone about the vertex");
        slope = 0.5 * (m_min + m_max);

        double dist_L = std::numeric_limits<double>::max();
        for (const auto& bv : mesh.boundary)
            dist_L = std::min(dist_L, (mesh.vertices[bv.index] - vp).norm());

        double rho0 = 0.5 * dist_L;
        // tangent sphere radius R = rho0*sqrt(1+m^2)/m; decrease rho0 until
        // the cap mean curvature 2/R clears H
        while (2.0 * slope / (rho0 * std::sqrt(1.0 + slope * slope)) < H) {
            rho0 *= 0.5;
            if (rho0 < 1e-9 * dist_L)
                throw std::runtime_error(
                    "no admissible smoothing radius: vertex too blunt relative to H");
        }
        out.smoothed = true;
        out.rho0 = rho0;
        out.cap_radius = rho0 * std::sqrt(1.0 + slope * slope) / slope;
        z_center = (hv - slope * rho0) - rho0 / slope;
    }

    const int n = mesh.num_vertices();
    out.psi = ScalarField::constant(n, 0.0);
    out.H_psi = ScalarField::constant(n, 0.0);
    double margin = std::numeric_limits<double>::max();
    for (int i = 0; i < n; ++i) {
        Vec2 x = mesh.vertices[i];
        double rho = (x - vp).norm();
        if (out.smoothed && rho < out.rho0) {
            out.psi[i] = z_center + std::sqrt(out.cap_radius * out.cap_radius - rho * rho);
            out.H_psi[i] = 2.0 / out.cap_radius;
        } else {
            out.psi[i] = cone_height(cone, x);
            out.H_psi[i] = cone_mean_curvature(cone, x);
        }
        margin = std::min(margin, out.H_psi[i] - H);
    }
    out.min_margin = margin;
    return out;
}

}  // namespace hgraph
