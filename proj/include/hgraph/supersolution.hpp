#pragma once

#include "hgraph/cone.hpp"
#include "hgraph/field.hpp"
#include "hgraph/mesh.hpp"

namespace hgraph {

/// Cone graph with the vertex replaced by a tangent spherical cap of mean
/// curvature >= H (only when the vertex projects into the meshed domain).
struct Supersolution {
    ScalarField psi;     // nodal heights
    ScalarField H_psi;   // nodal mean curvature of the graph
    bool smoothed = false;
    double rho0 = 0.0;   // smoothing disk radius
    double cap_radius = 0.0;
    double min_margin = 0.0;  // min over nodes of H_psi - H
};

/// Builds the supersolution for a finite-vertex cone over the meshed domain.
/// Throws if no admissible smoothing radius exists or the cone is not
/// radially symmetric about its vertex projection where smoothing is needed.
Supersolution smooth_supersolution(const ConeSpec& cone, double H, const Mesh& mesh);

}  // namespace hgraph
