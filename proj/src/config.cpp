#include "hgraph/config.hpp"

#include <cmath>
#include <limits>

#include "hgraph/periodic_spline.hpp"

namespace hgraph {

double BoundaryData::eval(double param) const {
    if (from_cone) throw std::logic_error("from-cone boundary data has no standalone values");
    if (values.empty()) throw std::invalid_argument("empty boundary data");
    if (is_constant()) return values.front();
    PeriodicSpline s(values);
    return s.eval(param);
}

bool BoundaryData::is_constant(double tol) const {
    for (double v : values)
        if (std::fabs(v - values.front()) > tol) return false;
    return true;
}

ConeSpec ProblemConfig::cone() const {
    if (vertex) return make_cone(gamma, *vertex);
    return make_cylinder(gamma, std::max(1.0, 4.0 / H));
}

double ProblemConfig::boundary_value(double param) const {
    if (boundary.from_cone) {
        if (!vertex) return 0.0;  // cylinder base curve sits in the plane
        return cone_height(cone(), L.position(param));
    }
    return boundary.eval(param);
}

HypothesisReport check_hypotheses(const ProblemConfig& config) {
    HypothesisReport rep;
    const int n = std::max(64, config.tol.cone_samples);

    // (a) the cone is an H-cone
    try {
        auto hc = is_H_cone(config.cone(), config.H, n);
        rep.h_cone = {hc.ok, hc.margin};
        rep.min_cone_curvature = hc.min_curvature;
    } catch (const std::exception&) {
        rep.h_cone = {false, -std::numeric_limits<double>::infinity()};
        rep.min_cone_curvature = std::numeric_limits<double>::quiet_NaN();
    }

    // (b) H_L >= -H on L
    double min_k = std::numeric_limits<double>::max();
    const int m = 1024;
    for (int i = 0; i < m; ++i)
        min_k = std::min(min_k, boundary_curvature(config.L, kTwoPi * i / m));
    rep.min_boundary_curvature = min_k;
    rep.h_L = {min_k + config.H >= 0.0, min_k + config.H};

    // (c) L inside the domain enclosed by gamma
    if (config.vertex) {
        double worst = std::numeric_limits<double>::max();
        bool all_inside = true;
        for (int i = 0; i < 256; ++i) {
            Vec2 p = config.L.position(kTwoPi * i / 256);
            double d = config.gamma.distance_to(p);
            if (!config.gamma.contains(p)) { all_inside = false; d = -d; }
            worst = std::min(worst, d);
        }
        rep.containment = {all_inside && worst > 0.0, worst};
    } else {
        // vertex at infinity: Serrin's setting requires L to lie on the cylinder base
        double worst = 0.0;
        for (int i = 0; i < 256; ++i)
            worst = std::max(worst, config.gamma.distance_to(config.L.position(kTwoPi * i / 256)));
        rep.containment = {worst <= 1e-8, 1e-8 - worst};
    }

    // (d) explicit boundary data must trace a curve on the cone
    if (config.boundary.from_cone || !config.vertex) {
        rep.boundary_on_cone = {true, config.tol.boundary_fit};
    } else {
        try {
            auto cone = config.cone();
            double worst = 0.0;
            for (int i = 0; i < 256; ++i) {
                double t = kTwoPi * i / 256;
                worst = std::max(worst, std::fabs(config.boundary.eval(t) -
                                                  cone_height(cone, config.L.position(t))));
            }
            rep.boundary_on_cone = {worst <= config.tol.boundary_fit,
                                    config.tol.boundary_fit - worst};
        } catch (const std::exception&) {
            rep.boundary_on_cone = {false, -std::numeric_limits<double>::infinity()};
        }
    }
    return rep;
}

}  // namespace hgraph
