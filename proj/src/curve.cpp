#include "hgraph/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hgraph/detail/cyclic_tridiag.hpp"

namespace hgraph {

using detail::solve_cyclic_tridiag;

namespace {

double wrap_param(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

}  // namespace

PlanarCurve PlanarCurve::circle(Vec2 center, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("circle radius must be positive");
    PlanarCurve c;
    c.kind_ = CurveKind::Circle;
    c.center_ = center;
    c.a_ = c.b_ = radius;
    c.finalize();
    return c;
}

PlanarCurve PlanarCurve::ellipse(Vec2 center, double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("ellipse radii must be positive");
    PlanarCurve c;
    c.kind_ = CurveKind::Ellipse;
    c.center_ = center;
    c.a_ = a;
    c.b_ = b;
    c.finalize();
    return c;
}

PlanarCurve PlanarCurve::spline(std::vector<Vec2> points) {
    const int n = static_cast<int>(points.size());
    if (n < 4) throw std::invalid_argument("spline curve needs at least 4 control points");

    PlanarCurve c;
    c.kind_ = CurveKind::Spline;
    c.points_ = std::move(points);

    // periodic natural cubic spline: h*M_{i-1} + 4h*M_i + h*M_{i+1} = 6*(d2 p)/h
    const double h = kTwoPi / n;
    std::vector<double> a(n, h / 6.0), b(n, 4.0 * h / 6.0), cc(n, h / 6.0);
    for (int comp = 0; comp < 2; ++comp) {
        std::vector<double> rhs(n);
        for (int i = 0; i < n; ++i) {
            const Vec2& pm = c.points_[(i + n - 1) % n];
            const Vec2& p0 = c.points_[i];
            const Vec2& pp = c.points_[(i + 1) % n];
            double dm = comp == 0 ? pm.x : pm.y;
            double d0 = comp == 0 ? p0.x : p0.y;
            double dp = comp == 0 ? pp.x : pp.y;
            rhs[i] = (dp - 2.0 * d0 + dm) / h;
        }
        auto m = solve_cyclic_tridiag(a, b, cc, rhs);
        if (c.spline_m_.empty()) c.spline_m_.resize(n);
        for (int i = 0; i < n; ++i) {
            if (comp == 0) c.spline_m_[i].x = m[i];
            else c.spline_m_[i].y = m[i];
        }
    }
    c.finalize();
    return c;
}

Vec2 PlanarCurve::position(double t) const {
    t = wrap_param(t);
    switch (kind_) {
        case CurveKind::Circle:
            return center_ + Vec2{a_ * std::cos(t), a_ * std::sin(t)};
        case CurveKind::Ellipse:
            return center_ + Vec2{a_ * std::cos(t), b_ * std::sin(t)};
        case CurveKind::Spline: {
            const int n = static_cast<int>(points_.size());
            const double h = kTwoPi / n;
            int i = std::min(static_cast<int>(t / h), n - 1);
            double u = t - i * h;
            const Vec2& p0 = points_[i];
            const Vec2& p1 = points_[(i + 1) % n];
            const Vec2& m0 = spline_m_[i];
            const Vec2& m1 = spline_m_[(i + 1) % n];
            double a0 = (h - u), a1 = u;
            return (m0 * (a0 * a0 * a0) + m1 * (a1 * a1 * a1)) / (6.0 * h) +
                   (p0 - m0 * (h * h / 6.0)) * (a0 / h) +
                   (p1 - m1 * (h * h / 6.0)) * (a1 / h);
        }
    }
    throw std::logic_error("unreachable");
}

Vec2 PlanarCurve::derivative(double t) const {
    t = wrap_param(t);
    switch (kind_) {
        case CurveKind::Circle:
            return {-a_ * std::sin(t), a_ * std::cos(t)};
        case CurveKind::Ellipse:
            return {-a_ * std::sin(t), b_ * std::cos(t)};
        case CurveKind::Spline: {
            const int n = static_cast<int>(points_.size());
            const double h = kTwoPi / n;
            int i = std::min(static_cast<int>(t / h), n - 1);
            double u = t - i * h;
            const Vec2& p0 = points_[i];
            const Vec2& p1 = points_[(i + 1) % n];
            const Vec2& m0 = spline_m_[i];
            const Vec2& m1 = spline_m_[(i + 1) % n];
            double a0 = (h - u), a1 = u;
            return (m1 * (a1 * a1) - m0 * (a0 * a0)) / (2.0 * h) +
                   (p1 - p0) / h - (m1 - m0) * (h / 6.0);
        }
    }
    throw std::logic_error("unreachable");
}

Vec2 PlanarCurve::second_derivative(double t) const {
    t = wrap_param(t);
    switch (kind_) {
        case CurveKind::Circle:
            return {-a_ * std::cos(t), -a_ * std::sin(t)};
        case CurveKind::Ellipse:
            return {-a_ * std::cos(t), -b_ * std::sin(t)};
        case CurveKind::Spline: {
            const int n = static_cast<int>(points_.size());
            const double h = kTwoPi / n;
            int i = std::min(static_cast<int>(t / h), n - 1);
            double u = t - i * h;
            const Vec2& m0 = spline_m_[i];
            const Vec2& m1 = spline_m_[(i + 1) % n];
            return (m0 * (h - u) + m1 * u) / h;
        }
    }
    throw std::logic_error("unreachable");
}

double PlanarCurve::curvature(double t) const {
    Vec2 d = derivative(t);
    Vec2 dd = second_derivative(t);
    double speed = d.norm();
    if (!(speed > 0.0)) throw std::domain_error("degenerate curve parametrization");
    return d.cross(dd) / (speed * speed * speed);
}

Vec2 PlanarCurve::inward_normal(double t) const {
    return derivative(t).perp().normalized();
}

bool PlanarCurve::contains(Vec2 p) const {
    if (kind_ == CurveKind::Circle) {
        return (p - center_).norm() < a_;
    }
    if (kind_ == CurveKind::Ellipse) {
        Vec2 d = p - center_;
        return (d.x / a_) * (d.x / a_) + (d.y / b_) * (d.y / b_) < 1.0;
    }
    // winding number by summed angle increments
    const int m = 1024;
    double total = 0.0;
    Vec2 prev = position(0.0) - p;
    for (int i = 1; i <= m; ++i) {
        Vec2 cur = position(kTwoPi * i / m) - p;
        total += std::atan2(prev.cross(cur), prev.dot(cur));
        prev = cur;
    }
    return std::lround(total / kTwoPi) == 1;
}

double PlanarCurve::nearest_parameter(Vec2 p) const {
    if (kind_ == CurveKind::Circle) {
        Vec2 d = p - center_;
        if (d.norm() == 0.0) return 0.0;
        return wrap_param(std::atan2(d.y, d.x));
    }
    const int m = 512;
    double best_t = 0.0;
    double best = std::numeric_limits<double>::max();
    for (int i = 0; i < m; ++i) {
        double t = kTwoPi * i / m;
        double d2 = (position(t) - p).squared_norm();
        if (d2 < best) { best = d2; best_t = t; }
    }
    // golden-section refinement of |p - gamma(t)|^2 around the best sample
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = best_t - kTwoPi / m, hi = best_t + kTwoPi / m;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = (position(x1) - p).squared_norm();
    double f2 = (position(x2) - p).squared_norm();
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = (position(x1) - p).squared_norm();
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = (position(x2) - p).squared_norm();
        }
    }
    return wrap_param(0.5 * (lo + hi));
}

double PlanarCurve::distance_to(Vec2 p) const {
    return (position(nearest_parameter(p)) - p).norm();
}

PlanarCurve PlanarCurve::scaled(double factor) const {
    if (factor <= 0.0) throw std::invalid_argument("scale factor must be positive");
    switch (kind_) {
        case CurveKind::Circle:
            return circle(center_ * factor, a_ * factor);
        case CurveKind::Ellipse:
            return ellipse(center_ * factor, a_ * factor, b_ * factor);
        case CurveKind::Spline: {
            std::vector<Vec2> pts(points_);
            for (auto& p : pts) p = p * factor;
            return spline(std::move(pts));
        }
    }
    throw std::logic_error("unreachable");
}

PlanarCurve PlanarCurve::translated(Vec2 d) const {
    switch (kind_) {
        case CurveKind::Circle:
            return circle(center_ + d, a_);
        case CurveKind::Ellipse:
            return ellipse(center_ + d, a_, b_);
        case CurveKind::Spline: {
            std::vector<Vec2> pts(points_);
            for (auto& p : pts) p += d;
            return spline(std::move(pts));
        }
    }
    throw std::logic_error("unreachable");
}

PlanarCurve PlanarCurve::rotated(double angle) const {
    double ca = std::cos(angle), sa = std::sin(angle);
    auto rot = [&](Vec2 p) { return Vec2{ca * p.x - sa * p.y, sa * p.x + ca * p.y}; };
    switch (kind_) {
        case CurveKind::Circle:
            return circle(rot(center_), a_);
        case CurveKind::Ellipse: {
            // a rotated ellipse is not axis aligned; resample as a spline
            std::vector<Vec2> pts;
            for (int i = 0; i < 256; ++i) pts.push_back(rot(position(kTwoPi * i / 256)));
            return spline(std::move(pts));
        }
        case CurveKind::Spline: {
            std::vector<Vec2> pts(points_);
            for (auto& p : pts) p = rot(p);
            return spline(std::move(pts));
        }
    }
    throw std::logic_error("unreachable");
}

void PlanarCurve::finalize() {
    // length, enclosed area, centroid and curvature extremes by composite
    // Simpson over a fine uniform grid
    const int m = 4096;  // even
    const double h = kTwoPi / m;
    double len = 0.0, area = 0.0, cx = 0.0, cy = 0.0;
    for (int i = 0; i <= m; ++i) {
        double w = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        double t = i * h;
        Vec2 p = position(t);
        Vec2 d = derivative(t);
        len += w * d.norm();
        area += w * 0.5 * p.cross(d);
        cx += w * 0.5 * p.x * p.x * d.y;
        cy += w * (-0.5) * p.y * p.y * d.x;
    }
    length_ = len * h / 3.0;
    area_ = area * h / 3.0;
    if (area_ <= 0.0)
        throw std::invalid_argument("curve must be positively (counterclockwise) oriented");
    centroid_ = {cx * h / (3.0 * area_), cy * h / (3.0 * area_)};

    double kmin = std::numeric_limits<double>::max();
    double kabs = 0.0;
    for (int i = 0; i < m; ++i) {
        double k = curvature(i * h);
        if (!std::isfinite(k)) throw std::invalid_argument("curve has non-finite curvature");
        kmin = std::min(kmin, k);
        kabs = std::max(kabs, std::fabs(k));
    }
    min_curvature_ = kmin;
    max_abs_curvature_ = kabs;
}

double ray_hit_parameter(const PlanarCurve& curve, Vec2 origin, Vec2 dir) {
    Vec2 d = dir.normalized();
    const int m = 2048;
    auto cross_at = [&](double t) { return (curve.position(t) - origin).cross(d); };

    std::vector<double> hits;
    double t0 = 0.0, c0 = cross_at(0.0);
    for (int i = 1; i <= m; ++i) {
        double t1 = kTwoPi * i / m;
        double c1 = cross_at(t1);
        // roots exactly on a sample node are taken as-is; otherwise bisect a
        // strict sign change (this keeps grid-aligned rays from double counting)
        if (c1 == 0.0 || c0 * c1 < 0.0) {
            double t = t1;
            if (c1 != 0.0) {
                double lo = t0, hi = t1, clo = c0;
                for (int it = 0; it < 100; ++it) {
                    double mid = 0.5 * (lo + hi);
                    double cm = cross_at(mid);
                    if ((clo <= 0.0) == (cm <= 0.0)) { lo = mid; clo = cm; }
                    else hi = mid;
                }
                t = 0.5 * (lo + hi);
            }
            if ((curve.position(t) - origin).dot(d) > 0.0) {
                bool dup = false;
                for (double prev : hits)
                    if (std::fabs(prev - t) < 1e-9 || std::fabs(std::fabs(prev - t) - kTwoPi) < 1e-9)
                        dup = true;
                if (!dup) hits.push_back(t);
            }
        }
        t0 = t1;
        c0 = c1;
    }
    if (hits.empty()) throw std::domain_error("ray does not hit the curve");
    if (hits.size() > 1)
        throw std::domain_error("ray hits the curve more than once (not star-shaped)");
    return hits.front();
}

}  // namespace hgraph
