#include "hgraph/radial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hgraph {

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 30);
}

void fill_grid(RadialProfile& p, int samples) {
    p.r.resize(samples);
    p.u.resize(samples);
    p.du.resize(samples);
    auto s = [&p](double r) { return p.slope(r); };
    double acc = 0.0;  // integral from r_in up
    for (int i = 0; i < samples; ++i) {
        double ri = p.r_in + (p.r_out - p.r_in) * i / (samples - 1);
        p.r[i] = ri;
        p.du[i] = p.slope(ri);
        if (i > 0) acc += integrate(s, p.r[i - 1], ri);
        p.u[i] = acc;
    }
    // anchor at the outer boundary value
    double shift = p.u_out - p.u.back();
    for (double& v : p.u) v += shift;

    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double ri = p.r[i];
        if (ri == 0.0) continue;
        double W = std::sqrt(1.0 + p.du[i] * p.du[i]);
        double lhs = std::pow(ri, p.n - 1) * p.du[i] / W;
        double rhs = -p.H * std::pow(ri, p.n) / p.n + p.c;
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    p.max_first_integral_residual = worst;
}

}  // namespace

CapEval spherical_cap(double R, double rho, int) {
    if (rho >= R) throw std::invalid_argument("cap evaluated at or beyond its equator");
    CapEval e;
    e.value = std::sqrt(R * R - rho * rho);
    e.radial_slope = -rho / e.value;
    return e;
}

double cap_height(double H, double rho_boundary, double r, int n) {
    double R = n / H;
    return spherical_cap(R, r, n).value - spherical_cap(R, rho_boundary, n).value;
}

double RadialProfile::q(double radius) const {
    double v = -H * radius / n;
    if (c != 0.0) v += c * std::pow(radius, 1 - n);
    return v;
}

double RadialProfile::slope(double radius) const {
    double qq = q(radius);
    double d = 1.0 - qq * qq;
    if (d <= 0.0) throw std::domain_error("radial profile has vertical slope");
    return qq / std::sqrt(d);
}

double RadialProfile::eval(double radius) const {
    if (radius < r_in - 1e-12 || radius > r_out + 1e-12)
        throw std::domain_error("radius outside the profile domain");
    auto s = [this](double rr) { return slope(rr); };
    return u_out - integrate(s, std::min(std::max(radius, r_in), r_out), r_out);
}

RadialProfile radial_shoot_disk(int n, double H, double r_out, double u_out) {
    if (n < 2) throw std::invalid_argument("dimension must be >= 2");
    if (H * r_out / n >= 1.0)
        throw std::runtime_error("no radial graph solution: H r/n >= 1 at the boundary");
    RadialProfile p;
    p.n = n;
    p.H = H;
    p.c = 0.0;
    p.r_in = 0.0;
    p.r_out = r_out;
    p.u_out = u_out;
    fill_grid(p, 1025);
    return p;
}

RadialProfile radial_shoot_annulus(int n, double H, double r_in, double r_out,
                                   double u_in, double u_out) {
    if (n < 2) throw std::invalid_argument("dimension must be >= 2");
    if (!(0.0 < r_in && r_in < r_out))
        throw std::invalid_argument("annulus radii must satisfy 0 < r_in < r_out");

    RadialProfile p;
    p.n = n;
    p.H = H;
    p.r_in = r_in;
    p.r_out = r_out;
    p.u_out = u_out;

    // admissible flux constants: |q(r)| < 1 across the annulus
    double c_lo = -std::numeric_limits<double>::max();
    double c_hi = std::numeric_limits<double>::max();
    const int scan = 512;
    for (int i = 0; i <= scan; ++i) {
        double r = r_in + (r_out - r_in) * i / scan;
        double w = std::pow(r, n - 1);
        c_lo = std::max(c_lo, (-1.0 + H * r / n) * w);
        c_hi = std::min(c_hi, (1.0 + H * r / n) * w);
    }
    if (!(c_lo < c_hi))
        throw std::runtime_error("no admissible flux constant: graph condition empty");
    double pad = 1e-9 * (c_hi - c_lo);
    c_lo += pad;
    c_hi -= pad;

    auto drop = [&](double c) {
        p.c = c;
        auto s = [&p](double r) { return p.slope(r); };
        return integrate(s, r_in, r_out);  // u_out - u_in
    };
    double target = u_out - u_in;

    // drop(c) is increasing in c; bracket then bisect
    double lo = c_lo, hi = c_hi;
    double flo = drop(lo) - target, fhi = drop(hi) - target;
    if (flo > 0.0 || fhi < 0.0)
        throw std::runtime_error("no admissible flux constant matches the boundary data");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::fabs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        if (drop(mid) - target < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    p.c = 0.5 * (lo + hi);
    fill_grid(p, 1025);
    return p;
}

}  // namespace hgraph
