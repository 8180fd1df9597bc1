#include "hgraph/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hgraph/continuation.hpp"
#include "hgraph/fem.hpp"

namespace hgraph {

bool InvariantSuite::all_ok() const {
    auto pass = [](const InvariantItem& i) { return !i.applicable || i.ok; };
    return pass(sandwich) && pass(height_bound) && pass(gradient_on_boundary) &&
           pass(uniqueness) && pass(residual);
}

InvariantSuite run_invariant_suite(const Mesh& mesh, const ScalarField& v,
                                   const ProblemConfig& config, const ScalarField* psi) {
    InvariantSuite suite;
    const double slack = 1e-9 * (1.0 + v.max_abs());

    if (config.vertex && psi) {
        suite.sandwich.applicable = true;
        double m = std::numeric_limits<double>::max();
        for (int i = 0; i < mesh.num_vertices(); ++i) {
            m = std::min(m, v[i] + slack);
            m = std::min(m, (*psi)[i] - v[i] + slack);
        }
        m = std::min(m, config.vertex->z - psi->max() + slack);
        suite.sandwich.margin = m;
        suite.sandwich.ok = m >= 0.0;
    } else if (!config.vertex) {
        suite.height_bound.applicable = true;
        suite.height_bound.margin = 4.0 / config.H - v.max_abs();
        suite.height_bound.ok = suite.height_bound.margin >= 0.0;
    }

    suite.gradient_on_boundary.applicable = true;
    double layer_max = 0.0, interior_max = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        bool layer = mesh.is_boundary[tri[0]] || mesh.is_boundary[tri[1]] ||
                     mesh.is_boundary[tri[2]];
        double g = element_gradient(mesh, v, t).norm();
        if (layer)
            layer_max = std::max(layer_max, g);
        else
            interior_max = std::max(interior_max, g);
    }
    suite.gradient_on_boundary.margin =
        layer_max * (1.0 + 10.0 * mesh.max_edge) - interior_max;
    suite.gradient_on_boundary.ok = suite.gradient_on_boundary.margin >= 0.0;

    // boundary trace and curvature field of the solved problem
    ScalarField bc = ScalarField::constant(mesh.num_vertices(), 0.0);
    for (const auto& b : mesh.boundary) bc[b.index] = v[b.index];
    ScalarField Hf = ScalarField::constant(mesh.num_vertices(), config.H);

    suite.residual.applicable = true;
    Eigen::VectorXd r = assemble_residual(mesh, v, Hf);
    suite.residual_norm = r.size() ? r.norm() : 0.0;
    double mean = 0.0;
    for (const auto& b : mesh.boundary) mean += v[b.index];
    if (!mesh.boundary.empty()) mean /= static_cast<double>(mesh.boundary.size());
    ScalarField flat = ScalarField::constant(mesh.num_vertices(), mean);
    for (const auto& b : mesh.boundary) flat[b.index] = v[b.index];
    Eigen::VectorXd r0 = assemble_residual(mesh, flat, Hf);
    double tol = std::max(1e-8, config.tol.newton * (1.0 + (r0.size() ? r0.norm() : 0.0)));
    suite.residual.margin = tol - suite.residual_norm;
    suite.residual.ok = suite.residual.margin >= 0.0;

    suite.uniqueness.applicable = true;
    ContinuationState alt = continuation_in_h(mesh, bc, config.H);
    if (alt.reached_target) {
        suite.uniqueness_diff = sup_diff(v, alt.v);
        suite.uniqueness.margin = 1e-8 - suite.uniqueness_diff;
        suite.uniqueness.ok = suite.uniqueness.margin >= 0.0;
    } else {
        suite.uniqueness.ok = false;
        suite.uniqueness.margin = -1.0;
    }

    std::ostringstream os;
    os << (suite.all_ok() ? "all invariants hold" : "invariant failures:");
    if (!suite.all_ok()) {
        if (suite.sandwich.applicable && !suite.sandwich.ok) os << " sandwich";
        if (suite.height_bound.applicable && !suite.height_bound.ok) os << " height-bound";
        if (!suite.gradient_on_boundary.ok) os << " gradient-location";
        if (!suite.uniqueness.ok) os << " uniqueness";
        if (!suite.residual.ok) os << " residual";
    }
    suite.message = os.str();
    return suite;
}

}  // namespace hgraph
