#pragma once

#include <string>

#include <Eigen/Sparse>

#include "hgraph/field.hpp"
#include "hgraph/mesh.hpp"

namespace hgraph {

/// Piecewise-linear gradient of the field on triangle t.
Vec2 element_gradient(const Mesh& mesh, const ScalarField& v, int t);

/// Weak-form residual of Q[v] = div(grad v / W) + H over interior nodes:
/// r_i = -int grad v . grad phi_i / W + int H phi_i, W = sqrt(1+|grad v|^2).
Eigen::VectorXd assemble_residual(const Mesh& mesh, const ScalarField& v,
                                  const ScalarField& H_field);

/// Exact derivative of assemble_residual with respect to the interior nodal
/// values; symmetric, negative definite.
Eigen::SparseMatrix<double> assemble_jacobian(const Mesh& mesh, const ScalarField& v);

struct NewtonOptions {
    double tol = 1e-10;  // relative residual tolerance
    int max_iterations = 60;
    int max_backtracks = 30;
};

struct NewtonReport {
    bool converged = false;
    int iterations = 0;
    double residual_norm = 0.0;
    std::string message;
};

struct NewtonResult {
    ScalarField field;
    NewtonReport report;
};

/// Damped Newton (Armijo backtracking on the residual 2-norm) from the given
/// initial field. Boundary values are imposed exactly from boundary_values.
NewtonResult newton_solve(const Mesh& mesh, const ScalarField& initial,
                          const ScalarField& H_field, const ScalarField& boundary_values,
                          const NewtonOptions& opts = {});

}  // namespace hgraph
