#include "hgraph/detail/cyclic_tridiag.hpp"

namespace hgraph::detail {

std::vector<double> solve_cyclic_tridiag(const std::vector<double>& a,
                                         const std::vector<double>& b,
                                         const std::vector<double>& c,
                                         std::vector<double> rhs) {
    const int n = static_cast<int>(b.size());
    auto tridiag = [&](const std::vector<double>& d, std::vector<double> r) {
        std::vector<double> cp(n, 0.0), x(n, 0.0);
        cp[0] = c[0] / d[0];
        r[0] /= d[0];
        for (int i = 1; i < n; ++i) {
            double m = d[i] - a[i] * cp[i - 1];
            cp[i] = c[i] / m;
            r[i] = (r[i] - a[i] * r[i - 1]) / m;
        }
        x[n - 1] = r[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = r[i] - cp[i] * x[i + 1];
        return x;
    };

    const double alpha = a[0];
    const double beta = c[n - 1];
    const double gamma = -b[0];
    std::vector<double> bmod(b);
    bmod[0] -= gamma;
    bmod[n - 1] -= alpha * beta / gamma;

    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = alpha;

    auto x = tridiag(bmod, rhs);
    auto z = tridiag(bmod, u);

    double factor = (x[0] + beta * x[n - 1] / gamma) /
                    (1.0 + z[0] + beta * z[n - 1] / gamma);
    for (int i = 0; i < n; ++i) x[i] -= factor * z[i];
    return x;
}

}  // namespace hgraph::detail
