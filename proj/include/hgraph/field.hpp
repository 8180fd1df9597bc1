#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hgraph {

/// Nodal values, one per mesh vertex.
struct ScalarField {
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(std::vector<double> v) : values(std::move(v)) {}
    static ScalarField constant(int n, double c) {
        return ScalarField(std::vector<double>(static_cast<size_t>(n), c));
    }

    int size() const { return static_cast<int>(values.size()); }
    double& operator[](int i) { return values[i]; }
    double operator[](int i) const { return values[i]; }

    double min() const { return *std::min_element(values.begin(), values.end()); }
    double max() const { return *std::max_element(values.begin(), values.end()); }
    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::fabs(v));
        return m;
    }
    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline double sup_diff(const ScalarField& a, const ScalarField& b) {
    if (a.size() != b.size()) throw std::invalid_argument("field size mismatch");
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace hgraph
