#include "hgraph/periodic_spline.hpp"

#include <cmath>
#include <stdexcept>

#include "hgraph/detail/cyclic_tridiag.hpp"

namespace hgraph {

PeriodicSpline::PeriodicSpline(std::vector<double> values) : values_(std::move(values)) {
    const int n = static_cast<int>(values_.size());
    if (n < 4) throw std::invalid_argument("periodic spline needs at least 4 values");
    const double h = kTwoPi / n;
    std::vector<double> a(n, h / 6.0), b(n, 4.0 * h / 6.0), c(n, h / 6.0), rhs(n);
    for (int i = 0; i < n; ++i) {
        double dm = values_[(i + n - 1) % n];
        double d0 = values_[i];
        double dp = values_[(i + 1) % n];
        rhs[i] = (dp - 2.0 * d0 + dm) / h;
    }
    m_ = detail::solve_cyclic_tridiag(a, b, c, std::move(rhs));
}

namespace {
double wrap(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}
}  // namespace

double PeriodicSpline::eval(double t) const {
    const int n = size();
    const double h = kTwoPi / n;
    t = wrap(t);
    int i = std::min(static_cast<int>(t / h), n - 1);
    double u = t - i * h;
    double a0 = h - u, a1 = u;
    double m0 = m_[i], m1 = m_[(i + 1) % n];
    double p0 = values_[i], p1 = values_[(i + 1) % n];
    return (m0 * a0 * a0 * a0 + m1 * a1 * a1 * a1) / (6.0 * h) +
           (p0 - m0 * h * h / 6.0) * (a0 / h) + (p1 - m1 * h * h / 6.0) * (a1 / h);
}

double PeriodicSpline::derivative(double t) const {
    const int n = size();
    const double h = kTwoPi / n;
    t = wrap(t);
    int i = std::min(static_cast<int>(t / h), n - 1);
    double u = t - i * h;
    double a0 = h - u, a1 = u;
    double m0 = m_[i], m1 = m_[(i + 1) % n];
    double p0 = values_[i], p1 = values_[(i + 1) % n];
    return (m1 * a1 * a1 - m0 * a0 * a0) / (2.0 * h) + (p1 - p0) / h - (m1 - m0) * h / 6.0;
}

double PeriodicSpline::second_derivative(double t) const {
    const int n = size();
    const double h = kTwoPi / n;
    t = wrap(t);
    int i = std::min(static_cast<int>(t / h), n - 1);
    double u = t - i * h;
    return (m_[i] * (h - u) + m_[(i + 1) % n] * u) / h;
}

}  // namespace hgraph
