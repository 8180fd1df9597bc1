#include "hgraph/fem.hpp"

#include <cmath>

#include <Eigen/SparseLU>

namespace hgraph {

namespace {

struct ElementGeom {
    std::array<Vec2, 3> grad;  // P1 shape function gradients
    double area;
};

ElementGeom element_geom(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    Vec2 a = mesh.vertices[tri[0]], b = mesh.vertices[tri[1]], c = mesh.vertices[tri[2]];
    double two_area = (b - a).cross(c - a);
    ElementGeom g;
    g.area = 0.5 * two_area;
    g.grad[0] = (c - b).perp() / two_area;
    g.grad[1] = (a - c).perp() / two_area;
    g.grad[2] = (b - a).perp() / two_area;
    return g;
}

}  // namespace

Vec2 element_gradient(const Mesh& mesh, const ScalarField& v, int t) {
    auto g = element_geom(mesh, t);
    const auto& tri = mesh.triangles[t];
    Vec2 grad{0.0, 0.0};
    for (int k = 0; k < 3; ++k) grad += v[tri[k]] * g.grad[k];
    return grad;
}

Eigen::VectorXd assemble_residual(const Mesh& mesh, const ScalarField& v,
                                  const ScalarField& H_field) {
    if (v.size() != mesh.num_vertices() || H_field.size() != mesh.num_vertices())
        throw std::invalid_argument("field not sized to mesh");
    if (!v.all_finite()) throw std::invalid_argument("field contains non-finite values");

    Eigen::VectorXd r = Eigen::VectorXd::Zero(mesh.num_interior());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        auto g = element_geom(mesh, t);
        const auto& tri = mesh.triangles[t];
        Vec2 grad{0.0, 0.0};
        for (int k = 0; k < 3; ++k) grad += v[tri[k]] * g.grad[k];
        double W = std::sqrt(1.0 + grad.squared_norm());
        for (int k = 0; k < 3; ++k) {
            int row = mesh.interior_id[tri[k]];
            if (row < 0) continue;
            // exact P1 mass for the source term: int_T H phi_k
            double hk = H_field[tri[k]], hj = H_field[tri[(k + 1) % 3]],
                   hl = H_field[tri[(k + 2) % 3]];
            double source = g.area / 12.0 * (2.0 * hk + hj + hl);
            r[row] += -g.area * grad.dot(g.grad[k]) / W + source;
        }
    }
    return r;
}

Eigen::SparseMatrix<double> assemble_jacobian(const Mesh& mesh, const ScalarField& v) {
    if (v.size() != mesh.num_vertices())
        throw std::invalid_argument("field not sized to mesh");

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(mesh.num_triangles()) * 9);
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        auto g = element_geom(mesh, t);
        const auto& tri = mesh.triangles[t];
        Vec2 grad{0.0, 0.0};
        for (int k = 0; k < 3; ++k) grad += v[tri[k]] * g.grad[k];
        double W2 = 1.0 + grad.squared_norm();
        double W = std::sqrt(W2);
        double W3 = W * W2;
        for (int i = 0; i < 3; ++i) {
            int row = mesh.interior_id[tri[i]];
            if (row < 0) continue;
            for (int j = 0; j < 3; ++j) {
                int col = mesh.interior_id[tri[j]];
                if (col < 0) continue;
                // coefficient tensor I/W - grad v (x) grad v / W^3
                double val = -g.area * (g.grad[i].dot(g.grad[j]) / W -
                                        grad.dot(g.grad[i]) * grad.dot(g.grad[j]) / W3);
                trips.emplace_back(row, col, val);
            }
        }
    }
    Eigen::SparseMatrix<double> J(mesh.num_interior(), mesh.num_interior());
    J.setFromTriplets(trips.begin(), trips.end());
    return J;
}

NewtonResult newton_solve(const Mesh& mesh, const ScalarField& initial,
                          const ScalarField& H_field, const ScalarField& boundary_values,
                          const NewtonOptions& opts) {
    NewtonResult res;
    res.field = initial;
    if (res.field.size() != mesh.num_vertices())
        throw std::invalid_argument("initial field not sized to mesh");

    // boundary values held exactly
    for (const auto& bv : mesh.boundary) res.field[bv.index] = boundary_values[bv.index];

    Eigen::VectorXd r = assemble_residual(mesh, res.field, H_field);
    double rnorm = r.norm();
    const double target = opts.tol * (1.0 + rnorm);

    for (int it = 0; it < opts.max_iterations; ++it) {
        if (rnorm <= target) {
            res.report = {true, it, rnorm, "converged"};
            return res;
        }
        auto J = assemble_jacobian(mesh, res.field);
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(J);
        if (lu.info() != Eigen::Success) {
            res.report = {false, it, rnorm, "singular Jacobian"};
            return res;
        }
        Eigen::VectorXd delta = lu.solve(-r);
        if (!delta.allFinite()) {
            res.report = {false, it, rnorm, "linear solve produced non-finite update"};
            return res;
        }

        double lambda = 1.0;
        ScalarField trial = res.field;
        bool accepted = false;
        for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
            for (int k = 0; k < mesh.num_interior(); ++k)
                trial[mesh.interior[k]] = res.field[mesh.interior[k]] + lambda * delta[k];
            Eigen::VectorXd rt;
            bool finite = true;
            try {
                rt = assemble_residual(mesh, trial, H_field);
            } catch (const std::exception&) {
                finite = false;
            }
            if (finite && rt.allFinite() && rt.norm() <= (1.0 - 1e-4 * lambda) * rnorm) {
                res.field = trial;
                r = rt;
                rnorm = rt.norm();
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            res.report = {false, it + 1, rnorm, "line search stagnation"};
            return res;
        }
    }
    res.report = {rnorm <= target, opts.max_iterations, rnorm,
                  rnorm <= target ? "converged" : "iteration limit reached"};
    return res;
}

}  // namespace hgraph
