#pragma once

#include <string>

#include "hgraph/config.hpp"
#include "hgraph/field.hpp"
#include "hgraph/mesh.hpp"

namespace hgraph {

struct InvariantItem {
    bool applicable = false;
    bool ok = false;
    double margin = 0.0;  // quantity minus its threshold; ok == (margin >= 0)
};

/// Post-solve invariant suite: (a) sandwich 0 <= v <= sup psi <= <V,e>,
/// (b) height bound max|v| <= 4/H (vertex at infinity), (c) gradient maximum
/// attained at the boundary layer, (d) uniqueness cross-check against an
/// independently started solve, (e) residual at acceptance tolerance.
struct InvariantSuite {
    InvariantItem sandwich;
    InvariantItem height_bound;
    InvariantItem gradient_on_boundary;
    InvariantItem uniqueness;
    InvariantItem residual;
    double uniqueness_diff = 0.0;
    double residual_norm = 0.0;
    std::string message;

    bool all_ok() const;
};

/// psi: the supersolution field when available (finite-vertex pipeline);
/// pass nullptr for the vertex-at-infinity pipeline.
InvariantSuite run_invariant_suite(const Mesh& mesh, const ScalarField& v,
                                   const ProblemConfig& config,
                                   const ScalarField* psi = nullptr);

}  // namespace hgraph
