#pragma once

#include <vector>

namespace hgraph::detail {

/// Solves the cyclic tridiagonal system with diagonal b, lower band a,
/// upper band c, and wrap-around entries a[0] (row 0, col n-1) and
/// c[n-1] (row n-1, col 0). Thomas algorithm plus Sherman-Morrison.
std::vector<double> solve_cyclic_tridiag(const std::vector<double>& a,
                                         const std::vector<double>& b,
                                         const std::vector<double>& c,
                                         std::vector<double> rhs);

}  // namespace hgraph::detail
