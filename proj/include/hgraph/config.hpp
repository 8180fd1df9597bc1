#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hgraph/cone.hpp"
#include "hgraph/curve.hpp"

namespace hgraph {

struct Tolerances {
    double newton = 1e-10;          // relative residual tolerance
    double boundary_fit = 1e-8;     // explicit boundary data must sit on the cone
    int barrier_samples = 256;      // collar grid, boundary direction
    int cone_samples = 64;          // hypothesis sampling per axis
};

/// Explicit boundary data: values at uniformly spaced parameters on L,
/// interpolated periodically. Empty source means from-cone data.
struct BoundaryData {
    bool from_cone = true;
    std::vector<double> values;  // at params 2*pi*i/values.size()

    double eval(double param) const;
    bool is_constant(double tol = 1e-12) const;
};

/// Full instance of the Theorem 1/2 data.
struct ProblemConfig {
    PlanarCurve gamma;
    std::optional<Vec3> vertex;  // nullopt: vertex at infinity
    PlanarCurve L;
    double H = 1.0;
    BoundaryData boundary;
    double mesh_h = 0.05;
    Tolerances tol;
    int serrin_terms = 6;  // sequence length for the vertex-at-infinity limit

    ConeSpec cone() const;
    /// Boundary height at the given parameter of L (from-cone data reads the
    /// cone graph above L).
    double boundary_value(double param) const;
};

struct HypothesisItem {
    bool ok = false;
    double margin = 0.0;  // quantity minus its threshold; ok == (margin >= 0)
};

struct HypothesisReport {
    HypothesisItem h_cone;       // margin: min cone curvature - H
    double min_cone_curvature = 0.0;
    HypothesisItem h_L;          // margin: min_L (H_L + H)
    double min_boundary_curvature = 0.0;
    HypothesisItem containment;  // margin: min distance of L to gamma (inside)
    HypothesisItem boundary_on_cone;  // margin: tol - max |phi - psi| on L

    bool all_ok() const {
        return h_cone.ok && h_L.ok && containment.ok && boundary_on_cone.ok;
    }
};

/// Checks the hypotheses of Theorems 1 and 2 for the given data. Failures
/// are reported through the flags, never thrown.
HypothesisReport check_hypotheses(const ProblemConfig& config);

}  // namespace hgraph
