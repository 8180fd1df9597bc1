#include "hgraph/collar.hpp"

#include <cmath>
#include <stdexcept>

namespace hgraph {

double CollarChart::distance(Vec2 x) const {
    double theta = L_.nearest_parameter(x);
    return (x - L_.position(theta)).dot(L_.inward_normal(theta));
}

double CollarChart::phi_on_curve(double theta) const {
    return phi_spline_ ? phi_spline_->eval(theta) : phi_const_;
}

CollarChart::Point CollarChart::query(Vec2 x) const {
    Point p;
    p.theta = L_.nearest_parameter(x);
    Vec2 foot = L_.position(p.theta);
    p.s = (x - foot).dot(L_.inward_normal(p.theta));

    double k0 = L_.curvature(p.theta);
    double denom = 1.0 - p.s * k0;
    if (denom <= 0.0)
        throw std::domain_error("point beyond the focal distance of the collar");
    p.H_s = k0 / denom;

    p.phi = phi_on_curve(p.theta);
    if (phi_spline_) {
        double speed = L_.derivative(p.theta).norm();
        double dphi_darc = phi_spline_->derivative(p.theta) / speed;
        Vec2 tangent = L_.derivative(p.theta) / speed;
        // arc length contracts by (1 - s*k0) on the parallel curve
        p.grad_phi = tangent * (dphi_darc / denom);
    }
    return p;
}

CollarChart build_collar(const PlanarCurve& L, const std::optional<PeriodicSpline>& phi,
                         double phi_const, double epsilon) {
    CollarChart c;
    c.L_ = L;
    c.phi_spline_ = phi;
    c.phi_const_ = phi_const;

    double kmax = L.max_abs_curvature();
    double eps_auto = kmax > 0.0 ? 0.5 / kmax : 0.25 * L.length();
    c.epsilon_ = epsilon > 0.0 ? epsilon : eps_auto;
    if (c.epsilon_ > eps_auto + 1e-12)
        throw std::invalid_argument("collar width exceeds the focal bound of L");
    if (c.epsilon_ <= 0.0)
        throw std::runtime_error("collar width underflow");

    if (!phi) {
        c.B_max_ = 1.0;
        c.max_grad_phi_ = 0.0;
        c.phi_c2_ = std::fabs(phi_const);
        return c;
    }

    // sample |phi| + |grad phi| + |Hess phi| over the collar; the Hessian of
    // the normal extension by central differences
    const double scale = std::sqrt(L.enclosed_area());
    const double h = 1e-5 * scale;
    auto phi_at = [&](Vec2 x) {
        return phi->eval(L.nearest_parameter(x));
    };
    double worst = 0.0, bmax = 1.0, gmax = 0.0;
    const int nt = 128, ns = 16;
    for (int i = 0; i < nt; ++i) {
        double theta = kTwoPi * i / nt;
        for (int j = 0; j <= ns; ++j) {
            double s = c.epsilon_ * j / ns;
            Vec2 x = L.position(theta) + s * L.inward_normal(theta);
            auto p = c.query(x);
            double g = p.grad_phi.norm();
            double pxx = (phi_at({x.x + h, x.y}) - 2.0 * p.phi + phi_at({x.x - h, x.y})) / (h * h);
            double pyy = (phi_at({x.x, x.y + h}) - 2.0 * p.phi + phi_at({x.x, x.y - h})) / (h * h);
            double pxy = (phi_at({x.x + h, x.y + h}) - phi_at({x.x + h, x.y - h}) -
                          phi_at({x.x - h, x.y + h}) + phi_at({x.x - h, x.y - h})) /
                         (4.0 * h * h);
            double hess = std::sqrt(pxx * pxx + 2.0 * pxy * pxy + pyy * pyy);
            worst = std::max(worst, std::fabs(p.phi) + g + hess);
            bmax = std::max(bmax, 1.0 + g * g);
            gmax = std::max(gmax, g);
        }
    }
    c.phi_c2_ = worst;
    c.B_max_ = bmax;
    c.max_grad_phi_ = gmax;
    return c;
}

}  // namespace hgraph
